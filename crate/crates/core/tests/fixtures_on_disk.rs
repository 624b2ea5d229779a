use std::fs;
use std::path::Path;

use morozov_core::fixtures::{shipped_fixtures, SubspaceInput};

#[test]
fn shipped_files_match_generator() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut on_disk: Vec<String> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    on_disk.sort();
    let mut expected: Vec<String> = shipped_fixtures().iter().map(|(n, _)| n.to_string()).collect();
    expected.sort();
    assert_eq!(on_disk, expected);
    for (name, content) in shipped_fixtures() {
        let disk = fs::read_to_string(dir.join(name)).unwrap();
        assert_eq!(disk, content, "{name} is stale; regenerate with `morozov fixtures paper`");
        let parsed = SubspaceInput::from_json_str(&disk).unwrap();
        assert_eq!(parsed.to_json_string(), disk);
    }
}
