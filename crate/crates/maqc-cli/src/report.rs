//! Report assembly and rendering.
//!
//! JSON output is byte-identical for identical jobs (including the seed):
//! field order is fixed by the struct layout, maps are sorted, and the
//! wall-clock timing is rendered in the markdown view only.

use std::collections::BTreeMap;

use serde::Serialize;

use maqc_core::{ColorSubset, Group, MultidegreeTable};

#[derive(Debug, Serialize)]
pub struct GroupJson {
    pub rank: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<u64>,
}

impl From<&Group> for GroupJson {
    fn from(g: &Group) -> Self {
        GroupJson {
            rank: g.rank,
            torsion: g.torsion.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TableEntryJson {
    pub q: i32,
    /// 1-based block indices of `L`.
    pub colors: Vec<usize>,
    pub group: GroupJson,
    /// Homological degree `−|J|` of the entry.  Only present for Tor
    /// tables, where a non-degenerate partition pins `|J| = |L| − rank σ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hom_degree: Option<i64>,
}

#[derive(Debug, Serialize)]
pub struct TotalJson {
    pub q: i32,
    pub group: GroupJson,
}

#[derive(Debug, Serialize)]
pub struct TableJson {
    pub model: String,
    pub coeff: String,
    pub entries: Vec<TableEntryJson>,
    pub totals: Vec<TotalJson>,
}

impl TableJson {
    pub fn from_table(t: &MultidegreeTable) -> Self {
        Self::build(t, None)
    }

    /// Tor tables additionally expose the homological degree `−|J|`,
    /// computed from the profile dimensions (`None` means the torus
    /// profile, all ones).
    pub fn from_tor_table(t: &MultidegreeTable, dims: Option<&[u32]>) -> Self {
        Self::build(t, Some(dims))
    }

    fn build(t: &MultidegreeTable, tor_dims: Option<Option<&[u32]>>) -> Self {
        let entries = t
            .entries
            .iter()
            .map(|(&(q, l), g)| {
                let colors = ColorSubset(l);
                let hom_degree = tor_dims.map(|dims| {
                    let weight: i64 = colors
                        .iter()
                        .map(|i| dims.map_or(1, |d| d[i] as i64))
                        .sum();
                    // rank σ = q − Σ_{i∈L} d_i, and |J| = |L| − rank σ.
                    (q as i64 - weight) - colors.len() as i64
                });
                TableEntryJson {
                    q,
                    colors: colors.display_indices(),
                    group: g.into(),
                    hom_degree,
                }
            })
            .collect();
        let totals = t
            .totals()
            .iter()
            .map(|(&q, g)| TotalJson { q, group: g.into() })
            .collect();
        TableJson {
            model: t.model.clone(),
            coeff: t.ring.label().to_string(),
            entries,
            totals,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SubcomplexJson {
    /// 1-based block indices of `L`.
    pub colors: Vec<usize>,
    pub faces: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct RingClassJson {
    pub id: usize,
    pub dim: i32,
    pub colors: Vec<usize>,
    pub representative: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct RingProductJson {
    pub left: usize,
    pub right: usize,
    pub result: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct RingJson {
    pub classes: Vec<RingClassJson>,
    pub unit: usize,
    pub products: Vec<RingProductJson>,
}

#[derive(Debug, Serialize)]
pub struct VerifyJson {
    pub seed: u64,
    pub trials: usize,
    pub max_vertices: usize,
    pub agreements: usize,
    pub checks: usize,
    pub summary: String,
    /// Minimal reproducers (instance JSON) for any disagreement.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<serde_json::Value>,
    /// Informational only: whether the integral cohomology of the finite
    /// algebra model agreed with the cellular groups on each instance (no
    /// claim is made either way).
    pub experimental_integral_dga_matches: usize,
}

#[derive(Debug, Serialize)]
pub struct StretchJson {
    pub complex: serde_json::Value,
    pub levels: BTreeMap<String, usize>,
    pub top_level: usize,
    pub table: TableJson,
}

/// The full report; exactly one payload section is populated per command.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<TableJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcomplexes: Option<Vec<SubcomplexJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stretch: Option<StretchJson>,
    #[serde(skip)]
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: &str, input: Option<String>) -> Self {
        Report {
            command: command.to_string(),
            input,
            table: None,
            cross_check: None,
            subcomplexes: None,
            ring: None,
            verify: None,
            stretch: None,
            timing_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# maqc {}\n\n", self.command));
        if let Some(input) = &self.input {
            out.push_str(&format!("input: `{input}`\n\n"));
        }
        if let Some(t) = &self.table {
            out.push_str(&format!(
                "model: {}, coefficients: {}\n\n",
                t.model, t.coeff
            ));
            let with_hom = t.entries.iter().any(|e| e.hom_degree.is_some());
            if with_hom {
                out.push_str("| q | hom | L | group |\n|---|---|---|---|\n");
            } else {
                out.push_str("| q | L | group |\n|---|---|---|\n");
            }
            for e in &t.entries {
                let colors = e
                    .colors
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                match e.hom_degree {
                    Some(h) => out.push_str(&format!(
                        "| {} | {} | {{{}}} | {} |\n",
                        e.q,
                        h,
                        colors,
                        render_group(&e.group)
                    )),
                    None => out.push_str(&format!(
                        "| {} | {{{}}} | {} |\n",
                        e.q,
                        colors,
                        render_group(&e.group)
                    )),
                }
            }
            out.push_str("\ntotals:\n\n| q | group |\n|---|---|\n");
            for t in &t.totals {
                out.push_str(&format!("| {} | {} |\n", t.q, render_group(&t.group)));
            }
            out.push('\n');
        }
        if let Some(c) = &self.cross_check {
            out.push_str(&format!("cross-check: {c}\n\n"));
        }
        if let Some(subs) = &self.subcomplexes {
            for s in subs {
                out.push_str(&format!(
                    "## L = {{{}}}\n\n",
                    s.colors
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ));
                for f in &s.faces {
                    out.push_str(&format!("- {{{}}}\n", f.join(",")));
                }
                out.push('\n');
            }
        }
        if let Some(r) = &self.ring {
            out.push_str("## cohomology classes\n\n| id | dim | L | representative |\n|---|---|---|---|\n");
            for c in &r.classes {
                out.push_str(&format!(
                    "| {} | {} | {{{}}} | {} |\n",
                    c.id,
                    c.dim,
                    c.colors
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    c.representative.join(" + ")
                ));
            }
            out.push_str("\n## nonzero products\n\n");
            for p in &r.products {
                out.push_str(&format!(
                    "- [{}]·[{}] = {}\n",
                    p.left,
                    p.right,
                    p.result
                        .iter()
                        .map(|i| format!("[{i}]"))
                        .collect::<Vec<_>>()
                        .join(" + ")
                ));
            }
            out.push('\n');
        }
        if let Some(v) = &self.verify {
            out.push_str(&format!(
                "seed {}, {} trials, max {} vertices: {}\n\n",
                v.seed, v.trials, v.max_vertices, v.summary
            ));
            if !v.failures.is_empty() {
                out.push_str("failures:\n\n");
                for f in &v.failures {
                    out.push_str(&format!("```json\n{f}\n```\n"));
                }
            }
            out.push_str(&format!(
                "integral DGA observation (no claim): {}/{} matched cellular groups\n\n",
                v.experimental_integral_dga_matches, v.trials
            ));
        }
        if let Some(s) = &self.stretch {
            out.push_str(&format!("top level: {}\n\nlevels:\n\n", s.top_level));
            for (id, level) in &s.levels {
                out.push_str(&format!("- {id} → {level}\n"));
            }
            out.push_str("\n```json\n");
            out.push_str(&serde_json::to_string_pretty(&s.complex).expect("complex json"));
            out.push_str("\n```\n\ntotals:\n\n| q | group |\n|---|---|\n");
            for t in &s.table.totals {
                out.push_str(&format!("| {} | {} |\n", t.q, render_group(&t.group)));
            }
            out.push('\n');
        }
        out.push_str(&format!("_elapsed: {} ms_\n", self.timing_ms));
        out
    }
}

fn render_group(g: &GroupJson) -> String {
    if g.rank == 0 && g.torsion.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    if g.rank == 1 {
        parts.push("Z".to_string());
    } else if g.rank > 1 {
        parts.push(format!("Z^{}", g.rank));
    }
    for t in &g.torsion {
        parts.push(format!("Z/{t}"));
    }
    parts.join(" + ")
}
