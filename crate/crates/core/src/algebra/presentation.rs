use serde::{Deserialize, Serialize};

use super::{
    AlgebraElement, AlgebraError, BigradedSet, DifferentialSpec, RewriteRule, StructuredAlgebra,
    Word,
};
use crate::bigraded::{BiDegree, RingDoc};
use crate::coeffs::{Prime, Ring};

/// JSON form of a [`StructuredAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDocument {
    pub schema: u32,
    pub ring: RingDoc,
    pub generators: Vec<GeneratorDoc>,
    #[serde(default)]
    pub rules: Vec<RuleDoc>,
    #[serde(default)]
    pub differential: Vec<DifferentialEntry>,
    #[serde(default)]
    pub distinguished_one: Option<String>,
    /// Letters from least to greatest for the termination order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub label: String,
    pub degree: i64,
    pub dimension: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDoc {
    pub lhs: Vec<String>,
    pub rhs: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: i64,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialEntry {
    pub gen: String,
    pub value: Vec<TermDoc>,
}

impl PresentationDocument {
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        serde_json::from_str(text).map_err(|e| AlgebraError::Presentation(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_algebra(&self) -> Result<StructuredAlgebra, AlgebraError> {
        if self.schema != 1 {
            return Err(AlgebraError::Presentation(format!(
                "unsupported schema {}",
                self.schema
            )));
        }
        let prime =
            Prime::new(self.ring.p).map_err(|e| AlgebraError::Presentation(e.to_string()))?;
        let ring = match self.ring.over.as_str() {
            "F" => Ring::field(prime),
            "G" => Ring::local(prime),
            other => {
                return Err(AlgebraError::Presentation(format!(
                    "unknown ring {other:?}"
                )))
            }
        };
        let mut set = BigradedSet::new();
        for g in &self.generators {
            set.push(g.label.clone(), BiDegree::new(g.degree, g.dimension))?;
        }
        let word = |labels: &[String]| -> Result<Word, AlgebraError> {
            labels
                .iter()
                .map(|l| {
                    set.id(l)
                        .ok_or_else(|| AlgebraError::UnknownGenerator(l.clone()))
                })
                .collect::<Result<_, _>>()
                .map(Word)
        };
        let combination = |terms: &[TermDoc]| -> Result<AlgebraElement, AlgebraError> {
            let mut e = AlgebraElement::zero(ring);
            for t in terms {
                e.add_term(word(&t.word)?, ring.reduce(t.coeff));
            }
            Ok(e)
        };
        let rules = self
            .rules
            .iter()
            .map(|r| {
                Ok(RewriteRule {
                    lhs: word(&r.lhs)?,
                    rhs: combination(&r.rhs)?,
                })
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        let mut values = Vec::new();
        for entry in &self.differential {
            let id = set
                .id(&entry.gen)
                .ok_or_else(|| AlgebraError::UnknownGenerator(entry.gen.clone()))?;
            values.push((id, combination(&entry.value)?));
        }
        let differential = DifferentialSpec::with_values(ring, &set, values)?;
        let one = match &self.distinguished_one {
            Some(l) => Some(
                set.id(l)
                    .ok_or_else(|| AlgebraError::UnknownGenerator(l.clone()))?,
            ),
            None => None,
        };
        let order = match &self.order {
            None => None,
            Some(labels) => {
                if labels.len() != set.len() {
                    return Err(AlgebraError::Presentation(
                        "order must list every generator once".into(),
                    ));
                }
                let mut rank = vec![u32::MAX; set.len()];
                for (r, l) in labels.iter().enumerate() {
                    let id = set
                        .id(l)
                        .ok_or_else(|| AlgebraError::UnknownGenerator(l.clone()))?;
                    if rank[id as usize] != u32::MAX {
                        return Err(AlgebraError::Presentation(format!(
                            "{l:?} listed twice in order"
                        )));
                    }
                    rank[id as usize] = r as u32;
                }
                Some(rank)
            }
        };
        StructuredAlgebra::new(ring, set, rules, differential, one, order)
    }

    pub fn from_algebra(a: &StructuredAlgebra) -> Self {
        let set = a.generators();
        let ring = a.ring();
        let labels = |w: &Word| {
            w.letters()
                .iter()
                .map(|&e| set.get(e).label.clone())
                .collect::<Vec<_>>()
        };
        let terms = |x: &AlgebraElement| {
            x.terms()
                .map(|(w, c)| TermDoc {
                    coeff: ring.signed(c),
                    word: labels(w),
                })
                .collect::<Vec<_>>()
        };
        let mut by_rank: Vec<(u32, String)> = a
            .letter_order()
            .iter()
            .enumerate()
            .map(|(i, &r)| (r, set.get(i as u32).label.clone()))
            .collect();
        by_rank.sort();
        let order: Vec<String> = by_rank.into_iter().map(|(_, l)| l).collect();
        let default_order: Vec<String> = set.generators().iter().map(|g| g.label.clone()).collect();
        PresentationDocument {
            schema: 1,
            ring: RingDoc {
                p: ring.prime().get(),
                over: if ring.is_field() { "F" } else { "G" }.into(),
            },
            generators: set
                .generators()
                .iter()
                .map(|g| GeneratorDoc {
                    label: g.label.clone(),
                    degree: g.bidegree.degree,
                    dimension: g.bidegree.dimension,
                })
                .collect(),
            rules: a
                .rules()
                .iter()
                .map(|r| RuleDoc {
                    lhs: labels(&r.lhs),
                    rhs: terms(&r.rhs),
                })
                .collect(),
            differential: (0..set.len() as u32)
                .filter(|&i| !a.differential_spec().value(i).is_zero())
                .map(|i| DifferentialEntry {
                    gen: set.get(i).label.clone(),
                    value: terms(a.differential_spec().value(i)),
                })
                .collect(),
            distinguished_one: a.one().map(|o| set.get(o).label.clone()),
            order: (order != default_order).then_some(order),
        }
    }
}
