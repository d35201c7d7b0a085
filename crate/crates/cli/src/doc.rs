//! The serializable output model. Both the JSON format and the text tables
//! are rendered from these structs, so a JSON file replayed through
//! `--from-json` reproduces the original table byte for byte.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use curveideal_core::oracle::VerifyReport;
use curveideal_core::{GammaModule, IdealFamily, OrderSetFamily, Semigroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupDoc {
    pub generators: Vec<u64>,
    pub gaps: Vec<u64>,
    pub conductor: u64,
}

impl SemigroupDoc {
    pub fn from_semigroup(s: &Semigroup) -> Self {
        SemigroupDoc {
            generators: s.generators().to_vec(),
            gaps: s.gaps().to_vec(),
            conductor: s.conductor(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSetDoc {
    pub gaps: Vec<u64>,
    pub min_gens: Vec<u64>,
    pub codim: usize,
    pub conductor: u64,
}

impl OrderSetDoc {
    pub fn from_module(m: &GammaModule<'_>) -> Self {
        OrderSetDoc {
            gaps: m.gaps().to_vec(),
            min_gens: m.minimal_generators(),
            codim: m.codimension(),
            conductor: m.conductor(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub order_set: OrderSetDoc,
    pub generators: Vec<String>,
    pub solved_conditions: Vec<String>,
    pub residual_conditions: Vec<String>,
    pub free_params: Vec<String>,
    pub assumptions: Vec<String>,
}

impl FamilyDoc {
    pub fn from_family(f: &IdealFamily<'_>) -> Self {
        FamilyDoc {
            order_set: OrderSetDoc::from_module(&f.order_set),
            generators: f.generator_strings(),
            solved_conditions: f.solved_strings(),
            residual_conditions: f.residual_strings(),
            free_params: f.free_param_names(),
            assumptions: f.assumption_strings(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialDoc {
    pub assignment: BTreeMap<String, i64>,
    pub expected_gaps: Vec<u64>,
    pub got_gaps: Vec<u64>,
    pub ok: bool,
    /// The assignment violates a residual condition, so the family claims
    /// nothing there and the trial was not checked.
    #[serde(default)]
    pub skipped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub order_set: OrderSetDoc,
    pub results: Vec<TrialDoc>,
}

impl ReportDoc {
    pub fn from_report(family: &IdealFamily<'_>, report: &VerifyReport) -> Self {
        let results = report
            .trials
            .iter()
            .map(|t| TrialDoc {
                assignment: t
                    .assignment
                    .iter()
                    .map(|(name, value)| {
                        // assignments are drawn from small integers
                        let n = value.to_integer().to_i64().unwrap_or_default();
                        (name.clone(), n)
                    })
                    .collect(),
                expected_gaps: t.expected_gaps.clone(),
                got_gaps: t.got_gaps.clone(),
                ok: t.ok,
                skipped: t.skipped,
            })
            .collect();
        ReportDoc {
            order_set: OrderSetDoc::from_module(&family.order_set),
            results,
        }
    }

    pub fn mismatches(&self) -> usize {
        self.results.iter().filter(|t| !t.ok).count()
    }

    pub fn skipped(&self) -> usize {
        self.results.iter().filter(|t| t.skipped).count()
    }
}

/// Top-level output document; the optional sections determine which table
/// the text renderer prints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Doc {
    pub semigroup: SemigroupDoc,
    pub codim: usize,
    pub order_sets: Vec<OrderSetDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub families: Option<Vec<FamilyDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Vec<ReportDoc>>,
}

impl Doc {
    pub fn order_sets_from_chain(semigroup: &Semigroup, chain: &[OrderSetFamily<'_>]) -> Self {
        let mut order_sets = Vec::new();
        for family in chain {
            for module in &family.members {
                order_sets.push(OrderSetDoc::from_module(module));
            }
        }
        Doc {
            semigroup: SemigroupDoc::from_semigroup(semigroup),
            codim: chain.last().map_or(0, |f| f.codim),
            order_sets,
            families: None,
            report: None,
        }
    }
}
