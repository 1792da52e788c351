use std::fmt::Write as _;

use serde::Serialize;

use super::blame::{blame_atom, locate, BlameSet};
use crate::engine::Consultation;
use crate::error::Result;
use crate::fuzzy::{max_all, Degree};

/// Other values still possible above the certainty of one value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Competitor {
    pub members: Vec<String>,
    pub degree: Degree,
    pub blame: BlameSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertaintyView {
    pub attribute: String,
    pub element: String,
    pub possibility: Degree,
    /// `1 - max` of the possibility of every other element.
    pub necessity: Degree,
    /// Sorted by degree, highest first.
    pub competitors: Vec<Competitor>,
}

/// Why `element` is not more certain: the other values that stay possible.
pub fn certainty_view(c: &Consultation, attribute: &str, element: &str) -> Result<CertaintyView> {
    let (g, own) = locate(c, attribute, element)?;
    let d = &g.distribution;
    let necessity = max_all(d.iter().filter(|(e, _)| *e != element).map(|(_, p)| p)).complement();
    let mut competitors = Vec::new();
    for (k, atom) in g.atoms.iter().enumerate() {
        let members: Vec<String> = atom.members.iter().filter(|m| *m != element).cloned().collect();
        let degree = g.output.0[k];
        if members.is_empty() || degree <= necessity {
            continue;
        }
        let mut blame = blame_atom(Some(c), g, k);
        if k == own {
            blame.members.clone_from(&members);
        }
        competitors.push(Competitor { members, degree, blame });
    }
    competitors.sort_by(|a, b| b.degree.cmp(&a.degree));
    Ok(CertaintyView {
        attribute: attribute.to_string(),
        element: element.to_string(),
        possibility: d.possibility(element)?,
        necessity,
        competitors,
    })
}

impl CertaintyView {
    pub fn render(&self, c: &Consultation, include_rules: bool) -> String {
        let mut out = format!(
            "{} = {} is possible at the degree {} and certain at the degree {}\n",
            self.attribute, self.element, self.possibility, self.necessity
        );
        if self.competitors.is_empty() {
            out.push_str("no other value competes with it\n");
            return out;
        }
        out.push_str("it is not more certain because these stay possible:\n");
        for k in &self.competitors {
            let _ = writeln!(out, "  {{{}}} at {}", k.members.join(", "), k.degree);
            for line in k.blame.render(c, include_rules).lines().skip(1) {
                let _ = writeln!(out, "    {line}");
            }
        }
        out
    }
}
