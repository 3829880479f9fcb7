//! Text form: a PD block followed by directive lines
//!
//! ```text
//! axis: 0
//! cut: 0
//! surgery: T0=1:-1, T1=2:+1
//! ```
//!
//! `cut` is optional and defaults to 0. Lines starting with `#` are comments.

use diagram::parse_diagram;

use crate::annular::AnnularPresentation;
use crate::error::CoverError;
use crate::surgery::{SurgeryCurve, SurgeryPresentation};

struct Parts {
    axis: usize,
    cut: usize,
    surgery: Option<(usize, String)>,
    pd: String,
}

fn split(text: &str) -> Result<Parts, CoverError> {
    let mut axis = None;
    let mut cut = 0;
    let mut surgery = None;
    let mut pd = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let bad = |msg: String| CoverError::Format { line: i + 1, msg };
        let number = |v: &str| v.trim().parse::<usize>().map_err(|e| bad(format!("{v:?}: {e}")));
        if let Some(v) = line.strip_prefix("axis:") {
            axis = Some(number(v)?);
        } else if let Some(v) = line.strip_prefix("cut:") {
            cut = number(v)?;
        } else if let Some(v) = line.strip_prefix("surgery:") {
            surgery = Some((i + 1, v.to_string()));
        } else {
            pd.push_str(raw);
        }
        pd.push('\n');
    }
    let axis = axis.ok_or(CoverError::Format {
        line: text.lines().count(),
        msg: "missing 'axis:' line".into(),
    })?;
    Ok(Parts { axis, cut, surgery, pd })
}

/// Parse an annular presentation; a `surgery:` line is ignored.
pub fn parse_annular(text: &str) -> Result<AnnularPresentation, CoverError> {
    let p = split(text)?;
    AnnularPresentation::with_cut(parse_diagram(&p.pd)?, p.axis, p.cut)
}

/// Parse a surgery presentation. Entries `Tr=c:s` name curve `r`, its
/// component `c` and its sign `s`; they must cover `T0..Tm` once each.
pub fn parse_surgery(text: &str) -> Result<SurgeryPresentation, CoverError> {
    let p = split(text)?;
    let (line, spec) = p.surgery.ok_or(CoverError::Format {
        line: text.lines().count(),
        msg: "missing 'surgery:' line".into(),
    })?;
    let bad = |msg: String| CoverError::Format { line, msg };
    let mut found: Vec<(usize, SurgeryCurve)> = Vec::new();
    for item in spec.split([',', ' ', '\t']).filter(|s| !s.is_empty()) {
        let parsed = (|| {
            let (name, rest) = item.split_once('=')?;
            let r = name.trim().strip_prefix('T')?.parse().ok()?;
            let (c, e) = rest.split_once(':')?;
            let epsilon = match e.trim() {
                "+1" | "1" => 1,
                "-1" => -1,
                _ => return None,
            };
            Some((
                r,
                SurgeryCurve {
                    component: c.trim().parse().ok()?,
                    epsilon,
                },
            ))
        })();
        found.push(parsed.ok_or_else(|| bad(format!("bad surgery entry {item:?}")))?);
    }
    found.sort_by_key(|(r, _)| *r);
    if found.iter().enumerate().any(|(i, (r, _))| i != *r) {
        return Err(bad("curves must be numbered T0..Tm without gaps".into()));
    }
    let annular = AnnularPresentation::with_cut(parse_diagram(&p.pd)?, p.axis, p.cut)?;
    SurgeryPresentation::new(annular, found.into_iter().map(|(_, c)| c).collect())
}
