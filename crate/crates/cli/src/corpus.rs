//! Named groups shipped with the binary, stored as frozen group files.

use std::path::Path;

use qdeg::theorems::CitedDegrees;
use qdeg::PermGroup;

use crate::error::CliError;
use crate::groupfile::{parse_group_file, serialize_group_file};
use crate::recipes;

/// A corpus group with its documented order and any registered degree sets.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub order: u128,
    /// Contents of the frozen group file.
    pub text: &'static str,
    /// Literature degree sets used when the group is above the chopping cap.
    pub cited: Vec<CitedDegrees>,
}

impl CorpusEntry {
    pub fn file_name(&self) -> String {
        format!("{}.grp", self.name)
    }

    pub fn group(&self) -> Result<PermGroup, CliError> {
        parse_group_file(self.text)?.to_group()
    }
}

macro_rules! frozen {
    ($name:literal, $order:expr) => {
        CorpusEntry { name: $name, order: $order, text: include_str!(concat!("../corpus/", $name, ".grp")), cited: Vec::new() }
    };
}

fn sl2_16_cited() -> CitedDegrees {
    CitedDegrees {
        p: 2,
        degrees: vec![1, 2, 4, 8, 16],
        citation: "SL(2,2^f) in defining characteristic: irreducibles are tensor products of Frobenius twists \
                   of the natural module, so every degree is a power of 2"
            .into(),
    }
}

fn psl2_17_cited() -> CitedDegrees {
    CitedDegrees {
        p: 17,
        degrees: (1..=17).step_by(2).collect(),
        citation: "PSL(2,r) in defining characteristic r: irreducibles are the even symmetric powers \
                   of the natural module, of odd dimensions 1, 3, .., r"
            .into(),
    }
}

pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = vec![
        frozen!("S4", 24),
        frozen!("W96", 96),
        frozen!("G1053", 1053),
        frozen!("PSL2_17", 2448),
        frozen!("SL2_16", 4080),
        frozen!("C2", 2),
        frozen!("C3", 3),
        frozen!("C6", 6),
        frozen!("S3", 6),
        frozen!("A4", 12),
        frozen!("D8", 8),
        frozen!("SL2_3", 24),
        frozen!("GL2_3", 48),
        frozen!("A5", 60),
        frozen!("S5", 120),
        frozen!("F21", 21),
    ];
    for e in &mut out {
        match e.name {
            "SL2_16" => e.cited.push(sl2_16_cited()),
            "PSL2_17" => e.cited.push(psl2_17_cited()),
            _ => {}
        }
    }
    out
}

pub fn lookup(name: &str) -> Result<CorpusEntry, CliError> {
    corpus().into_iter().find(|e| e.name == name).ok_or_else(|| CliError::UnknownCorpus(name.into()))
}

/// Group-file text produced by the recipe for `name`.
pub fn render_recipe(r: &recipes::Recipe) -> String {
    serialize_group_file(&r.header, &r.group)
}

/// Writes every recipe to `dir` as `NAME.grp`, returning the paths.
pub fn export(dir: &Path) -> Result<Vec<String>, CliError> {
    let io = |path: &Path, source| CliError::Io { path: path.display().to_string(), source };
    std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let mut written = Vec::new();
    for r in recipes::all() {
        let path = dir.join(format!("{}.grp", r.name));
        std::fs::write(&path, render_recipe(&r)).map_err(|e| io(&path, e))?;
        written.push(path.display().to_string());
    }
    Ok(written)
}
