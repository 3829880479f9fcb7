//! Input files. A link file holds a diagram in PD or braid form. A file
//! with an `axis:` directive is an annular presentation, and with a
//! `surgery:` directive a surgery presentation. Comment lines of the form
//! `# expect key: value` record expected invariants; the first other
//! comment line names the link.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use cover::{parse_annular, parse_surgery, AnnularPresentation, SurgeryPresentation};
use diagram::{parse_diagram, LinkDiagram};

use crate::error::CliError;

#[derive(Clone, Debug)]
pub enum Presentation {
    Annular(AnnularPresentation),
    Surgery(SurgeryPresentation),
}

#[derive(Clone, Debug)]
pub struct Input {
    pub path: String,
    pub name: String,
    /// The link. For presentations the axis comes first.
    pub diagram: LinkDiagram,
    pub presentation: Option<Presentation>,
    pub expect: BTreeMap<String, String>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn directive(text: &str, key: &str) -> bool {
    text.lines()
        .any(|l| l.split('#').next().unwrap_or("").trim_start().starts_with(key))
}

/// Parse the text of a link file.
pub fn parse_input(path: &str, text: &str) -> Result<Input, CliError> {
    let mut expect = BTreeMap::new();
    let mut name = None;
    for line in text.lines() {
        let Some(c) = line.trim().strip_prefix('#') else {
            continue;
        };
        let c = c.trim();
        if let Some((k, v)) = c.strip_prefix("expect ").and_then(|r| r.split_once(':')) {
            expect.insert(k.trim().to_string(), v.trim().to_string());
        } else if name.is_none() && !c.is_empty() {
            name = Some(c.to_string());
        }
    }
    let name = name.unwrap_or_else(|| {
        Path::new(path)
            .file_stem()
            .map_or_else(|| path.to_string(), |s| s.to_string_lossy().into_owned())
    });
    let (diagram, presentation) = if directive(text, "surgery:") {
        let sp = parse_surgery(text)?;
        (sp.realize()?.simplify(), Some(Presentation::Surgery(sp)))
    } else if directive(text, "axis:") {
        let a = parse_annular(text)?;
        let d = a.diagram();
        let order: Vec<usize> = std::iter::once(a.axis())
            .chain((0..d.num_components()).filter(|&k| k != a.axis()))
            .collect();
        (d.permute_components(&order)?, Some(Presentation::Annular(a)))
    } else {
        (parse_diagram(text)?, None)
    };
    Ok(Input {
        path: path.to_string(),
        name,
        diagram,
        presentation,
        expect,
    })
}

pub fn load(path: &Path) -> Result<Input, CliError> {
    parse_input(&path.display().to_string(), &read(path)?)
}

/// Paths listed one per line in a list file, relative to its directory.
/// Blank lines and `#` comments are skipped.
pub fn read_list(path: &Path) -> Result<Vec<PathBuf>, CliError> {
    let dir = path.parent().unwrap_or(Path::new(""));
    Ok(read(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| dir.join(l))
        .collect())
}
