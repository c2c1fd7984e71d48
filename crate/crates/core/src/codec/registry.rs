//! The sparse6 search graphs that certify several lower-bound cells, plus the
//! closed complements derived from them.

use std::sync::OnceLock;

use super::sparse6_decode;
use crate::graph::LoopedGraph;

/// Where a registry graph comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntrySource {
    Sparse6(&'static str),
    /// Closed complement (`J − A`) of another entry.
    ComplementOf(&'static str),
    /// Published only as a description; no encoding is available.
    Unavailable(&'static str),
}

#[derive(Debug, Clone)]
pub struct SearchGraphEntry {
    pub name: &'static str,
    /// The `(i, j)` cell this graph certifies.
    pub cell: (usize, usize),
    pub source: EntrySource,
    graph: Option<LoopedGraph>,
}

/// Result of asking for a certificate graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate<'a> {
    Available(&'a LoopedGraph),
    Unavailable { name: &'static str, reason: &'static str },
}

impl SearchGraphEntry {
    pub fn is_available(&self) -> bool {
        self.graph.is_some()
    }

    pub fn certificate(&self) -> Certificate<'_> {
        match &self.graph {
            Some(g) => Certificate::Available(g),
            None => Certificate::Unavailable {
                name: self.name,
                reason: "G₅ unavailable",
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchGraphRegistry {
    entries: Vec<SearchGraphEntry>,
}

const PUBLISHED: [(&str, (usize, usize), EntrySource); 7] = [
    (
        "G1",
        (2, 2),
        EntrySource::Sparse6(":K_ES`s_QOqDL?G`f_C`SOAGXsoAOiCqEOhdJ"),
    ),
    (
        "G2",
        (2, 3),
        EntrySource::Sparse6(":N_EC?aF?G`c_E?Qe_CXAecaPSQEPATQEPATTK`IdtK\\ATkiWyCkYz"),
    ),
    (
        "G3",
        (2, 4),
        EntrySource::Sparse6(":Oc?GgbaMGqOL?PbsIWyIDK\\AXcIXATOAGXW@CKawAK\\ATk_CXAiUq?PEMlbV^"),
    ),
    ("G4", (3, 2), EntrySource::Sparse6(":FehIA_t_S")),
    ("G5", (3, 3), EntrySource::Unavailable("Graph on 20 vertices")),
    (
        "G6",
        (3, 4),
        EntrySource::Sparse6(":K@GKPT?QXAecOhxBGWyG@CLC?bGSqTOAG`RhV"),
    ),
    ("G7", (4, 4), EntrySource::Sparse6(":J`?S@oBG[aDeOpwbJCPsHaOhc^")),
];

const COMPLEMENTS: [(&str, (usize, usize), &str); 3] =
    [("G1c", (3, 1), "G1"), ("G2c", (4, 1), "G2"), ("G5c", (4, 2), "G5")];

impl SearchGraphRegistry {
    fn build() -> Self {
        let mut entries: Vec<SearchGraphEntry> = PUBLISHED
            .iter()
            .map(|&(name, cell, source)| {
                let graph = match source {
                    EntrySource::Sparse6(s) => Some(sparse6_decode(s).expect("published sparse6 strings decode")),
                    _ => None,
                };
                SearchGraphEntry {
                    name,
                    cell,
                    source,
                    graph,
                }
            })
            .collect();
        for (name, cell, base) in COMPLEMENTS {
            let graph = entries
                .iter()
                .find(|e| e.name == base)
                .and_then(|e| e.graph.as_ref())
                .map(LoopedGraph::closed_complement);
            entries.push(SearchGraphEntry {
                name,
                cell,
                source: EntrySource::ComplementOf(base),
                graph,
            });
        }
        Self { entries }
    }

    pub fn entries(&self) -> &[SearchGraphEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&SearchGraphEntry> {
        self.entries.iter().find(|e| e.name.eq_ignore_ascii_case(name))
    }

    pub fn for_cell(&self, i: usize, j: usize) -> Option<&SearchGraphEntry> {
        self.entries.iter().find(|e| e.cell == (i, j))
    }
}

/// The registry, decoded once on first use.
pub fn search_graphs() -> &'static SearchGraphRegistry {
    static REGISTRY: OnceLock<SearchGraphRegistry> = OnceLock::new();
    REGISTRY.get_or_init(SearchGraphRegistry::build)
}
