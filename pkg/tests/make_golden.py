"""Regenerate tests/golden/ from the current CLI. Review every diff before committing."""

import contextlib
import io
import sys
from pathlib import Path

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

from cli_cases import GOLDEN_CASES  # noqa: E402

from pcrating.cli import main  # noqa: E402


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


if __name__ == "__main__":
    for name, argv in GOLDEN_CASES.items():
        code, out = run([a.format(data=HERE / "data") for a in argv])
        assert code == 0, (name, code)
        (HERE / "golden" / name).write_text(out)
        print(f"wrote {name}")
