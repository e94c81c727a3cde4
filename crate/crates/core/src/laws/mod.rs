//! Weighted reverse order laws as executable predicates.
//!
//! Each [`LawId`] names one characterization: a list of statements that are
//! claimed to be equivalent under the law's hypotheses. Exact statements are
//! evaluated directly by [`law_statement`]; set inclusions over K-inverse
//! families are evaluated by sampling the families
//! ([`inclusion_statement_sampled`]). [`check_equivalence`] evaluates all of
//! them and compares.

mod check;
mod context;
mod inclusion;
mod statements;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use check::{check_equivalence, check_reduction, EquivalenceReport, ReductionReport, SampleBudget, Verdict};
pub use context::{law_context, reduction_inputs, variant_context, LawContext};
pub use inclusion::{inclusion_statement_sampled, InclusionWitness, SampledVerdict};
pub use statements::{check_hypotheses, law_statement, statement_formula, t37_printed_middle_condition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LawId {
    T23,
    T24,
    T25,
    T26,
    C27,
    Greville,
    KolihaDc,
    T32,
    C33,
    T34,
    C35,
    T36,
    T37,
    T38,
    T39,
}

/// Which factor the weight `c` must commute with (together with its adjoint).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatementId {
    I,
    Ii,
    Iii,
    Iv,
}

impl LawId {
    pub const ALL: [LawId; 15] = [
        LawId::T23,
        LawId::T24,
        LawId::T25,
        LawId::T26,
        LawId::C27,
        LawId::Greville,
        LawId::KolihaDc,
        LawId::T32,
        LawId::C33,
        LawId::T34,
        LawId::C35,
        LawId::T36,
        LawId::T37,
        LawId::T38,
        LawId::T39,
    ];

    pub fn statements(self) -> &'static [StatementId] {
        use StatementId::*;
        match self {
            LawId::T23 | LawId::T24 | LawId::T25 | LawId::T26 | LawId::C27 => &[I, Ii, Iii],
            LawId::Greville | LawId::KolihaDc => &[I, Ii],
            LawId::T32 | LawId::C33 | LawId::T34 | LawId::C35 | LawId::T36 | LawId::T37 => &[I, Ii],
            LawId::T38 | LawId::T39 => &[I, Ii, Iii, Iv],
        }
    }

    /// The statement that quantifies over a K-inverse family, if any.
    pub fn sampled_statement(self) -> Option<StatementId> {
        match self {
            LawId::T32 | LawId::C33 | LawId::T34 | LawId::C35 | LawId::T36 | LawId::T37 => {
                Some(StatementId::I)
            }
            LawId::T38 | LawId::T39 => Some(StatementId::Ii),
            _ => None,
        }
    }

    pub fn is_exact(self, stmt: StatementId) -> bool {
        self.statements().contains(&stmt) && self.sampled_statement() != Some(stmt)
    }

    pub fn commute_side(self) -> Option<Side> {
        match self {
            LawId::T23 | LawId::T26 | LawId::C27 | LawId::T34 | LawId::C35 | LawId::T37 | LawId::T39 => {
                Some(Side::B)
            }
            LawId::T24 | LawId::T25 | LawId::T32 | LawId::C33 | LawId::T36 | LawId::T38 => Some(Side::A),
            LawId::Greville | LawId::KolihaDc => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LawId::T23 => "T23",
            LawId::T24 => "T24",
            LawId::T25 => "T25",
            LawId::T26 => "T26",
            LawId::C27 => "C27",
            LawId::Greville => "GREVILLE",
            LawId::KolihaDc => "KOLIHA_DC",
            LawId::T32 => "T32",
            LawId::C33 => "C33",
            LawId::T34 => "T34",
            LawId::C35 => "C35",
            LawId::T36 => "T36",
            LawId::T37 => "T37",
            LawId::T38 => "T38",
            LawId::T39 => "T39",
        }
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LawId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let up = s.to_ascii_uppercase().replace('-', "_");
        LawId::ALL
            .into_iter()
            .find(|l| l.as_str() == up)
            .ok_or_else(|| Error::Parse(format!("unknown law `{s}`")))
    }
}

impl StatementId {
    pub fn as_str(self) -> &'static str {
        match self {
            StatementId::I => "i",
            StatementId::Ii => "ii",
            StatementId::Iii => "iii",
            StatementId::Iv => "iv",
        }
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().trim_matches(|c| c == '(' || c == ')') {
            "i" | "1" => Ok(StatementId::I),
            "ii" | "2" => Ok(StatementId::Ii),
            "iii" | "3" => Ok(StatementId::Iii),
            "iv" | "4" => Ok(StatementId::Iv),
            _ => Err(Error::Parse(format!("unknown statement `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for l in LawId::ALL {
            assert_eq!(l.as_str().parse::<LawId>().unwrap(), l);
            assert_eq!(serde_json::to_string(&l).unwrap(), format!("\"{l}\""));
        }
        assert_eq!("koliha-dc".parse::<LawId>().unwrap(), LawId::KolihaDc);
        assert!("T99".parse::<LawId>().is_err());
        assert_eq!("(iii)".parse::<StatementId>().unwrap(), StatementId::Iii);
        assert_eq!(serde_json::to_string(&StatementId::Iv).unwrap(), "\"iv\"");
    }

    #[test]
    fn sampled_statements_are_listed() {
        for l in LawId::ALL {
            if let Some(s) = l.sampled_statement() {
                assert!(l.statements().contains(&s));
                assert!(!l.is_exact(s));
            }
        }
    }
}
