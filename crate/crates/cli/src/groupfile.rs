//! The plain-text group format: a `degree N` line followed by one
//! generator per line in 1-based cycle notation. `#` starts a comment.

use qdeg::{PermGroup, Permutation};

use crate::error::CliError;

/// Degree and generators as read from a group file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupFile {
    pub fn to_group(&self) -> Result<PermGroup, CliError> {
        Ok(PermGroup::new(self.degree, self.generators.clone())?)
    }
}

/// Cycles of one generator line; the product is taken left to right.
fn parse_cycles(text: &str, line: usize) -> Result<Vec<Vec<usize>>, CliError> {
    let err = |message: String| CliError::Parse { line, message };
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| err(format!("expected `(`, found `{rest}`")))?;
        let end = body.find(')').ok_or_else(|| err("unclosed cycle".into()))?;
        let points = body[..end]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad point `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        cycles.push(points);
        rest = body[end + 1..].trim_start();
    }
    Ok(cycles)
}

pub fn parse_group_file(text: &str) -> Result<GroupFile, CliError> {
    let mut degree = None;
    let mut generators = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some(n) = degree else {
            let value = content
                .strip_prefix("degree")
                .ok_or_else(|| CliError::Parse { line, message: "expected `degree N`".into() })?;
            let n = value
                .trim()
                .parse::<usize>()
                .map_err(|_| CliError::Parse { line, message: format!("bad degree `{}`", value.trim()) })?;
            degree = Some(n);
            continue;
        };
        let cycles = parse_cycles(content, line)?;
        for c in &cycles {
            for (k, &pt) in c.iter().enumerate() {
                if pt == 0 || pt > n {
                    return Err(CliError::Validation { line, message: format!("point {pt} outside 1..{n}") });
                }
                if c[..k].contains(&pt) {
                    return Err(CliError::Validation { line, message: format!("point {pt} repeated in a cycle") });
                }
            }
        }
        let g = Permutation::from_cycles(n, &cycles)
            .map_err(|e| CliError::Validation { line, message: e.to_string() })?;
        generators.push(g);
    }
    let degree = degree.ok_or(CliError::Parse { line: 0, message: "missing `degree N` line".into() })?;
    Ok(GroupFile { degree, generators })
}

/// Writes a group file with the given header comment lines.
pub fn serialize_group_file(header: &[String], g: &GroupFile) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    out.push_str(&format!("degree {}\n", g.degree));
    for x in &g.generators {
        out.push_str(&x.to_string());
        out.push('\n');
    }
    out
}
