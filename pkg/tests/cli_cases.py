GOLDEN_CASES = {
    "normalize_M.csv": ["normalize", "{data}/M.csv", "--scale", "9"],
    "normalize_M.json": ["normalize", "--input", "{data}/M.json", "--scale", "9"],
    "normalize_ones.csv": ["normalize", "{data}/ones.csv", "--scale", "9"],
    "weights_gm.json": ["weights", "{data}/M.csv", "--method", "gm"],
    "weights_judgments.json": ["weights", "{data}/judgments.json", "--method", "gm"],
    "weights_fulop_normalized.json": ["weights", "{data}/M.csv", "--method", "fulop", "--normalize-scale", "9"],
    "weights_gm_raw.json": ["weights", "{data}/M.csv", "--raw"],
    "compare_original.json": ["compare", "{data}/M.csv", "--scale", "9", "--method", "gm", "--reference", "original"],
    "compare_corrected.json": ["compare", "{data}/M.csv", "--scale", "9", "--reference", "corrected"],
    "compare_original.csv": ["compare", "{data}/M.csv", "--scale", "9", "--csv"],
    "compare_ones.json": ["compare", "{data}/ones.csv", "--scale", "9"],
    "table_9.txt": ["table", "--scale", "9"],
    "table_9.csv": ["table", "--scale", "9", "--csv"],
    "table_2.csv": ["table", "--scale", "2", "--csv"],
    "table_5.csv": ["table", "--scale", "5", "--csv"],
    "sweep_M.csv": ["sweep", "{data}/M.csv", "--scales", "9,101,1000000"],
    "sweep_ones.csv": ["sweep", "{data}/ones.csv", "--scales", "3,9,1000000"],
    "sweep_positions.csv": ["sweep", "--positions", "--value", "2", "--scales", "3,5,9,101"],
    "check_M.json": ["check", "{data}/M.csv"],
    "check_inconsistent.json": ["check", "{data}/inconsistent.csv"],
}
