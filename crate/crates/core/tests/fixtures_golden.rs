//! The JSON files under `fixtures/` are generated from the built-in corpus.
//! Run with `BISETCALC_BLESS=1` to rewrite them.

use std::path::{Path, PathBuf};

use bisetcalc::burnside::burnside_table;
use bisetcalc::fixtures;
use bisetcalc::gset::GSet;
use bisetcalc::json::{from_str, to_string};
use bisetcalc::scat::{OneCell, ZeroCell};
use bisetcalc::slice::SliceObject;

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn expected() -> Vec<(PathBuf, String)> {
    let mut out = Vec::new();
    for fx in fixtures::cells() {
        out.push((
            dir().join("cells").join(format!("{}.json", fx.name)),
            to_string(&fx.cell),
        ));
    }
    for g in fixtures::groups() {
        let pt = ZeroCell::point(g.clone());
        let name = g.name().to_string();
        out.push((
            dir().join("objects").join(format!("pt_{name}.json")),
            to_string(&SliceObject::terminal(pt.clone())),
        ));
        let free =
            SliceObject::new(pt.clone(), GSet::regular(g.clone()), vec![0; g.order()]).unwrap();
        out.push((
            dir().join("objects").join(format!("free_{name}.json")),
            to_string(&free),
        ));
        let table = serde_json::to_string_pretty(&burnside_table(&pt)).unwrap();
        out.push((
            dir().join("tables").join(format!("omega_pt_{name}.json")),
            table,
        ));
    }
    out.into_iter().map(|(p, s)| (p, s + "\n")).collect()
}

#[test]
fn fixture_files_match_the_builtin_corpus() {
    let bless = std::env::var_os("BISETCALC_BLESS").is_some();
    for (path, contents) in expected() {
        if bless {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &contents).unwrap();
            continue;
        }
        let found = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}; rerun with BISETCALC_BLESS=1", path.display()));
        assert_eq!(
            found,
            contents,
            "{} is stale; rerun with BISETCALC_BLESS=1",
            path.display()
        );
    }
}

#[test]
fn shipped_cells_parse() {
    for fx in fixtures::cells() {
        let text =
            std::fs::read_to_string(dir().join("cells").join(format!("{}.json", fx.name))).unwrap();
        let cell: OneCell = from_str(&text).unwrap();
        assert_eq!(cell, fx.cell, "{}", fx.name);
    }
}
