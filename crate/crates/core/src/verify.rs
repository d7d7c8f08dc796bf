//! Relator verification engine: checks a chosen matrix assignment against
//! every defining relation of a group family, with optional parameter
//! substitutions, and reports per-relator outcomes.
//!
//! A relator passes when the images of its two sides are exactly equal;
//! all arithmetic is exact, so there is no tolerance anywhere. When a
//! relator fails, the report names the first differing entry and renders
//! both values, which turns a failed check into a usable counterexample.
//!
//! The factor analysis utility probes a failing relator under a fixed
//! list of parameter specializations (β ↦ 1, β ↦ α, α ↦ 1, β ↦ α^{-1})
//! and reports which of them restore equality. This mechanizes the
//! factorization statements: the overcrossing-style mixed relation holds
//! exactly at β = 1, which is the welded specialization, while its
//! mirrored form holds exactly at β = α^{-1}.

use std::collections::BTreeMap;
use std::fmt;

use crate::burau::{word_matrix_evaluated, word_matrix_symbolic, BurauParams};
use crate::galgebra::{AlgMatrix, Matrix, PolyMatrix};
use crate::gassner::{iterate, IterationSpec};
use crate::laurent::{LaurentPoly, Param};
use crate::presentations::{expand_xi_word, relators, GroupFamily, Relator};
use crate::words::{word_to_auto, FreeAutomorphism, GenKind, Word};
use crate::{Error, Result};

/// Identifies which matrix assignment to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepTag {
    /// Action on the free group by automorphisms (no matrices).
    Artin,
    BurauSymbolic,
    BurauEvaluated,
    GassnerSymbolic,
    GassnerEvaluated,
    /// Laurent matrices of the depth-r iterated construction.
    Iterated(u32),
}

impl fmt::Display for RepTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepTag::Artin => write!(f, "artin"),
            RepTag::BurauSymbolic => write!(f, "burau-symbolic"),
            RepTag::BurauEvaluated => write!(f, "burau-evaluated"),
            RepTag::GassnerSymbolic => write!(f, "gassner-symbolic"),
            RepTag::GassnerEvaluated => write!(f, "gassner-evaluated"),
            RepTag::Iterated(r) => write!(f, "iterated({r})"),
        }
    }
}

impl RepTag {
    pub fn parse(text: &str) -> Result<RepTag> {
        match text {
            "artin" => Ok(RepTag::Artin),
            "burau-symbolic" => Ok(RepTag::BurauSymbolic),
            "burau-evaluated" => Ok(RepTag::BurauEvaluated),
            "gassner-symbolic" => Ok(RepTag::GassnerSymbolic),
            "gassner-evaluated" => Ok(RepTag::GassnerEvaluated),
            _ => {
                let inner = text
                    .strip_prefix("iterated(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("unknown representation {text:?}")))?;
                let r = inner
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("unknown representation {text:?}")))?;
                Ok(RepTag::Iterated(r))
            }
        }
    }
}

/// Outcome for one relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorRecord {
    pub label: String,
    pub passed: bool,
    /// First differing position with both rendered values, when failed.
    pub witness: Option<String>,
}

/// Full outcome of one verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub family: GroupFamily,
    pub n: u32,
    pub rep: RepTag,
    pub substitutions: BTreeMap<Param, LaurentPoly>,
    pub records: Vec<RelatorRecord>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    /// Deterministic JSON: substitutions sorted by parameter, relators in
    /// catalog order.
    pub fn to_json(&self) -> serde_json::Value {
        let substitutions: Vec<String> =
            self.substitutions.iter().map(|(p, v)| format!("{p}={v}")).collect();
        let relators: Vec<serde_json::Value> = self
            .records
            .iter()
            .map(|r| {
                let mut obj = serde_json::json!({
                    "label": r.label,
                    "status": if r.passed { "pass" } else { "fail" },
                });
                if let Some(w) = &r.witness {
                    obj["witness"] = serde_json::Value::String(w.clone());
                }
                obj
            })
            .collect();
        serde_json::json!({
            "family": self.family.to_string(),
            "n": self.n,
            "rep": self.rep.to_string(),
            "substitutions": substitutions,
            "relators": relators,
            "all_pass": self.all_pass(),
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at n={} under {}", self.family, self.n, self.rep)?;
        if !self.substitutions.is_empty() {
            let subs: Vec<String> =
                self.substitutions.iter().map(|(p, v)| format!("{p}={v}")).collect();
            write!(f, " with {}", subs.join(", "))?;
        }
        writeln!(f)?;
        for record in &self.records {
            if record.passed {
                writeln!(f, "  pass  {}", record.label)?;
            } else {
                writeln!(f, "  FAIL  {}", record.label)?;
                if let Some(w) = &record.witness {
                    writeln!(f, "        {w}")?;
                }
            }
        }
        write!(
            f,
            "{} of {} relators pass",
            self.records.iter().filter(|r| r.passed).count(),
            self.records.len()
        )
    }
}

fn uses_sigma_tau(family: GroupFamily) -> bool {
    !matches!(family, GroupFamily::PureWelded)
}

fn inapplicable(rep: RepTag, family: GroupFamily) -> Error {
    Error::InapplicableRep { rep: rep.to_string(), family: family.to_string() }
}

/// Images of a relator's two sides under one representation.
enum ImagePair {
    Auto(FreeAutomorphism, FreeAutomorphism),
    Symbolic(AlgMatrix, AlgMatrix),
    Laurent(PolyMatrix, PolyMatrix),
}

impl ImagePair {
    fn equal(&self) -> bool {
        match self {
            ImagePair::Auto(a, b) => a == b,
            ImagePair::Symbolic(a, b) => a == b,
            ImagePair::Laurent(a, b) => a == b,
        }
    }

    fn witness(&self) -> Option<String> {
        match self {
            ImagePair::Auto(a, b) => {
                for k in 1..=a.rank() {
                    let (x, y) = (a.image_of(k), b.image_of(k));
                    if x != y {
                        return Some(format!("image of x{k}: {x} vs {y}"));
                    }
                }
                None
            }
            ImagePair::Symbolic(a, b) => first_matrix_difference(a.rows(), b.rows()),
            ImagePair::Laurent(a, b) => first_matrix_difference(a.rows(), b.rows()),
        }
    }
}

fn first_matrix_difference<T: PartialEq + fmt::Display>(
    a: &[Vec<T>],
    b: &[Vec<T>],
) -> Option<String> {
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                return Some(format!("entry ({},{}): {x} vs {y}", i + 1, j + 1));
            }
        }
    }
    None
}

fn relator_images(
    rel: &Relator,
    rep: RepTag,
    family: GroupFamily,
    n: u32,
    subs: &BTreeMap<Param, LaurentPoly>,
) -> Result<ImagePair> {
    match rep {
        RepTag::Artin => {
            if !subs.is_empty() {
                return Err(Error::InapplicableRep {
                    rep: "artin with substitutions".into(),
                    family: family.to_string(),
                });
            }
            let lhs = word_to_auto(&expand_xi_word(&rel.lhs)?)?;
            let rhs = word_to_auto(&expand_xi_word(&rel.rhs)?)?;
            Ok(ImagePair::Auto(lhs, rhs))
        }
        RepTag::BurauSymbolic => {
            if !uses_sigma_tau(family) {
                return Err(inapplicable(rep, family));
            }
            let p = BurauParams::standard(n)?;
            let lhs = word_matrix_symbolic(&rel.lhs, &p)?.substitute(subs)?;
            let rhs = word_matrix_symbolic(&rel.rhs, &p)?.substitute(subs)?;
            Ok(ImagePair::Symbolic(lhs, rhs))
        }
        RepTag::BurauEvaluated => {
            if !uses_sigma_tau(family) {
                return Err(inapplicable(rep, family));
            }
            let p = BurauParams::standard(n)?;
            let lhs = word_matrix_evaluated(&rel.lhs, &p)?.substitute(subs)?;
            let rhs = word_matrix_evaluated(&rel.rhs, &p)?.substitute(subs)?;
            Ok(ImagePair::Laurent(lhs, rhs))
        }
        RepTag::GassnerSymbolic => {
            if uses_sigma_tau(family) {
                return Err(inapplicable(rep, family));
            }
            let lhs = crate::gassner::word_matrix_symbolic(&rel.lhs)?.substitute(subs)?;
            let rhs = crate::gassner::word_matrix_symbolic(&rel.rhs)?.substitute(subs)?;
            Ok(ImagePair::Symbolic(lhs, rhs))
        }
        RepTag::GassnerEvaluated => {
            if uses_sigma_tau(family) {
                return Err(inapplicable(rep, family));
            }
            let lhs = crate::gassner::word_matrix_evaluated(&rel.lhs)?.substitute(subs)?;
            let rhs = crate::gassner::word_matrix_evaluated(&rel.rhs)?.substitute(subs)?;
            Ok(ImagePair::Laurent(lhs, rhs))
        }
        RepTag::Iterated(r) => {
            if uses_sigma_tau(family) {
                return Err(inapplicable(rep, family));
            }
            // Depth r over base n+r−1 represents the rank-n family.
            let spec = IterationSpec::new(n + r - 1, r)?;
            let side = |w: &Word| -> Result<PolyMatrix> {
                let mut acc = Matrix::identity(
                    spec.size(),
                    crate::galgebra::Basis::Iterated(r),
                    &LaurentPoly::one(),
                );
                for letter in w.letters() {
                    let m = match letter.kind {
                        GenKind::Xi(i, j) => iterate(&spec, i, j)?,
                        _ => {
                            return Err(Error::UnsupportedLetter {
                                letter: letter.to_string(),
                                operation: "iterated representation".into(),
                            })
                        }
                    };
                    acc = acc.mul(&m)?;
                }
                Ok(acc)
            };
            Ok(ImagePair::Laurent(side(&rel.lhs)?.substitute(subs)?, side(&rel.rhs)?.substitute(subs)?))
        }
    }
}

/// Verifies every relator of the family at rank n under the chosen
/// representation, after applying the substitutions.
pub fn verify_rep(
    family: GroupFamily,
    n: u32,
    rep: RepTag,
    subs: &BTreeMap<Param, LaurentPoly>,
) -> Result<VerificationReport> {
    let catalog = relators(family, n)?;
    let mut records = Vec::with_capacity(catalog.len());
    for rel in &catalog {
        let images = relator_images(rel, rep, family, n, subs)?;
        let passed = images.equal();
        records.push(RelatorRecord {
            label: rel.label.clone(),
            passed,
            witness: if passed { None } else { images.witness() },
        });
    }
    Ok(VerificationReport { family, n, rep, substitutions: subs.clone(), records })
}

/// One probed specialization and whether it restored equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorOutcome {
    pub substitution: String,
    pub restores: bool,
}

/// The specializations probed by [`factor_analysis`], in report order.
pub fn factor_candidates() -> Vec<(String, BTreeMap<Param, LaurentPoly>)> {
    let mut list = Vec::new();
    let single = |p: Param, v: LaurentPoly| -> BTreeMap<Param, LaurentPoly> {
        let mut m = BTreeMap::new();
        m.insert(p, v);
        m
    };
    list.push(("b=1".to_string(), single(Param::Beta, LaurentPoly::one())));
    list.push(("b=a".to_string(), single(Param::Beta, LaurentPoly::var(Param::Alpha))));
    list.push(("a=1".to_string(), single(Param::Alpha, LaurentPoly::one())));
    list.push((
        "b=a^-1".to_string(),
        single(Param::Beta, LaurentPoly::var_pow(Param::Alpha, -1)),
    ));
    list
}

/// Probes one relator under each candidate specialization and reports
/// which of them make the two sides equal.
pub fn factor_analysis(
    rel: &Relator,
    rep: RepTag,
    family: GroupFamily,
    n: u32,
) -> Result<Vec<FactorOutcome>> {
    let mut outcomes = Vec::new();
    for (name, subs) in factor_candidates() {
        let images = relator_images(rel, rep, family, n, &subs)?;
        outcomes.push(FactorOutcome { substitution: name, restores: images.equal() });
    }
    Ok(outcomes)
}

/// Parses a substitution of the form `<param>=<param>`, `<param>=<param>^-1`,
/// or `<param>=<integer>`, e.g. `b=1`, `b=a`, `b=a^-1`.
pub fn parse_substitution(text: &str) -> Result<(Param, LaurentPoly)> {
    let (lhs, rhs) = text
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("substitution {text:?} is not of the form p=v")))?;
    let target = Param::parse(lhs.trim())?;
    let rhs = rhs.trim();
    let value = if let Ok(c) = rhs.parse::<i64>() {
        LaurentPoly::int(c)
    } else if let Some(base) = rhs.strip_suffix("^-1") {
        LaurentPoly::var_pow(Param::parse(base)?, -1)
    } else {
        LaurentPoly::var(Param::parse(rhs)?)
    };
    Ok((target, value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_subs() -> BTreeMap<Param, LaurentPoly> {
        BTreeMap::new()
    }

    fn beta_is(value: LaurentPoly) -> BTreeMap<Param, LaurentPoly> {
        let mut m = BTreeMap::new();
        m.insert(Param::Beta, value);
        m
    }

    #[test]
    fn virtual_relators_pass_under_burau() {
        for rep in [RepTag::BurauSymbolic, RepTag::BurauEvaluated] {
            let report = verify_rep(GroupFamily::Virtual, 3, rep, &no_subs()).unwrap();
            assert!(report.all_pass(), "{report}");
        }
    }

    #[test]
    fn welded_fails_generically_and_passes_at_beta_one() {
        let generic =
            verify_rep(GroupFamily::Welded, 3, RepTag::BurauEvaluated, &no_subs()).unwrap();
        assert!(!generic.all_pass());
        for record in &generic.records {
            let is_mixed = record.label.starts_with("Forbidden");
            assert_eq!(record.passed, !is_mixed, "{}", record.label);
            if is_mixed {
                let witness = record.witness.as_ref().expect("failure carries a witness");
                assert!(witness.starts_with("entry ("), "{witness}");
            }
        }

        let fixed = verify_rep(
            GroupFamily::Welded,
            3,
            RepTag::BurauEvaluated,
            &beta_is(LaurentPoly::one()),
        )
        .unwrap();
        assert!(fixed.all_pass(), "{fixed}");
    }

    #[test]
    fn twin_family_fails_generically_under_burau() {
        let report =
            verify_rep(GroupFamily::TwinWelded, 3, RepTag::BurauEvaluated, &no_subs()).unwrap();
        for record in &report.records {
            let is_twin = record.label.starts_with("Twin");
            assert_eq!(record.passed, !is_twin, "{}", record.label);
        }
        // The twin relators hold exactly at β = α^{-1}.
        let fixed = verify_rep(
            GroupFamily::TwinWelded,
            3,
            RepTag::BurauEvaluated,
            &beta_is(LaurentPoly::var_pow(Param::Alpha, -1)),
        )
        .unwrap();
        assert!(fixed.all_pass(), "{fixed}");
    }

    #[test]
    fn artin_action_verifies_welded_families() {
        for n in 3..=5u32 {
            let report = verify_rep(GroupFamily::Welded, n, RepTag::Artin, &no_subs()).unwrap();
            assert!(report.all_pass(), "{report}");
        }
        let report =
            verify_rep(GroupFamily::PureWelded, 4, RepTag::Artin, &no_subs()).unwrap();
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn basis_conjugation_families_pass_all_reps() {
        for rep in [RepTag::GassnerSymbolic, RepTag::GassnerEvaluated, RepTag::Iterated(2)] {
            let report = verify_rep(GroupFamily::PureWelded, 3, rep, &no_subs()).unwrap();
            assert!(report.all_pass(), "{rep}: {report}");
        }
    }

    #[test]
    fn factor_analysis_isolates_the_right_specializations() {
        let welded = relators(GroupFamily::Welded, 3).unwrap();
        let forbidden = welded.iter().find(|r| r.label == "Forbidden[1]").unwrap();
        let outcomes =
            factor_analysis(forbidden, RepTag::BurauEvaluated, GroupFamily::Welded, 3).unwrap();
        let restored: Vec<&str> = outcomes
            .iter()
            .filter(|o| o.restores)
            .map(|o| o.substitution.as_str())
            .collect();
        // β ↦ 1 is the welded specialization; α ↦ 1 degenerates both
        // generator matrices to twisted swaps and also restores equality.
        assert_eq!(restored, vec!["b=1", "a=1"]);

        let twins = relators(GroupFamily::TwinWelded, 3).unwrap();
        let twin = twins.iter().find(|r| r.label == "Twin[1]").unwrap();
        let outcomes =
            factor_analysis(twin, RepTag::BurauEvaluated, GroupFamily::TwinWelded, 3).unwrap();
        let restored: Vec<&str> = outcomes
            .iter()
            .filter(|o| o.restores)
            .map(|o| o.substitution.as_str())
            .collect();
        // β ↦ α does not restore the twin relator; β ↦ α^{-1} does.
        assert_eq!(restored, vec!["a=1", "b=a^-1"]);

        let v1 = welded.iter().find(|r| r.label == "V1[1]").unwrap();
        let outcomes =
            factor_analysis(v1, RepTag::BurauEvaluated, GroupFamily::Welded, 3).unwrap();
        assert!(outcomes.iter().all(|o| o.restores));
    }

    #[test]
    fn reports_serialize_deterministically() {
        let a = verify_rep(GroupFamily::Welded, 3, RepTag::BurauEvaluated, &no_subs()).unwrap();
        let b = verify_rep(GroupFamily::Welded, 3, RepTag::BurauEvaluated, &no_subs()).unwrap();
        assert_eq!(
            serde_json::to_string(&a.to_json()).unwrap(),
            serde_json::to_string(&b.to_json()).unwrap()
        );
        assert_eq!(a.to_json()["all_pass"], serde_json::Value::Bool(false));
    }

    #[test]
    fn inapplicable_pairings_are_rejected() {
        assert!(matches!(
            verify_rep(GroupFamily::PureWelded, 3, RepTag::BurauEvaluated, &no_subs()),
            Err(Error::InapplicableRep { .. })
        ));
        assert!(matches!(
            verify_rep(GroupFamily::Virtual, 3, RepTag::GassnerSymbolic, &no_subs()),
            Err(Error::InapplicableRep { .. })
        ));
        assert!(verify_rep(
            GroupFamily::Welded,
            3,
            RepTag::Artin,
            &beta_is(LaurentPoly::one())
        )
        .is_err());
    }

    #[test]
    fn substitution_parsing_covers_the_candidate_forms() {
        assert_eq!(
            parse_substitution("b=1").unwrap(),
            (Param::Beta, LaurentPoly::one())
        );
        assert_eq!(
            parse_substitution("b=a").unwrap(),
            (Param::Beta, LaurentPoly::var(Param::Alpha))
        );
        assert_eq!(
            parse_substitution("b=a^-1").unwrap(),
            (Param::Beta, LaurentPoly::var_pow(Param::Alpha, -1))
        );
        assert_eq!(
            parse_substitution("a=1").unwrap(),
            (Param::Alpha, LaurentPoly::one())
        );
        assert!(parse_substitution("nonsense").is_err());
        assert!(parse_substitution("c=1").is_err());
    }

    #[test]
    fn rep_tags_round_trip() {
        for rep in [
            RepTag::Artin,
            RepTag::BurauSymbolic,
            RepTag::BurauEvaluated,
            RepTag::GassnerSymbolic,
            RepTag::GassnerEvaluated,
            RepTag::Iterated(2),
        ] {
            assert_eq!(RepTag::parse(&rep.to_string()).unwrap(), rep);
        }
        assert!(RepTag::parse("fancy").is_err());
    }
}
