//! Catalog of homogeneous principal orbits with their structural data.
//!
//! Each record carries the group triple `(K, H, G)` of the orbit, the summand
//! dimensions `(d₁, d₂)`, family-specific rational parameters, the structural
//! constant `A`, and the expected classification verdict. `A` is computed
//! from the per-family closed formulas when the parameters allow it and is
//! cross-checked exactly against a stated value when both are present.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exact::{rat, ratq, Rational};
use crate::thresholds::{classify, psi, StructuralTriple, ThresholdError, VerdictTag};

/// Embedded default catalog resource.
const BUILTIN_JSON: &str = include_str!("../resources/catalog.json");
/// Environment variable naming an alternative catalog file.
pub const CATALOG_ENV: &str = "EINCOH_CATALOG";

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("cannot read catalog file: {0}")]
    Io(#[from] std::io::Error),
    #[error("catalog JSON is malformed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("record {record:?}: parameter {param} is not a rational: {value:?}")]
    BadRational {
        record: String,
        param: String,
        value: String,
    },
    #[error("record {record:?}: unknown verdict tag {tag:?}")]
    BadTag { record: String, tag: String },
    #[error("record {record:?}: missing parameter {param} and no stated A")]
    MissingParam { record: String, param: String },
    #[error("record {record:?}: computed A = {computed} but the record states A = {stated}")]
    AMismatch {
        record: String,
        computed: Rational,
        stated: Rational,
    },
    #[error("parameter {param} = {value} outside {constraint}")]
    ParamRange {
        param: &'static str,
        value: Rational,
        constraint: &'static str,
    },
    #[error("record {record:?}: {0}", .source)]
    Dimensions {
        record: String,
        source: ThresholdError,
    },
    #[error("unsupported schema version {0} (expected 1)")]
    Version(u32),
}

/// Orbit family, by the shape of the isotropy representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// Both summands inequivalent, fibration over a symmetric-type base.
    TypeI,
    /// Two equivalent summands.
    TypeII,
    /// Orbits of semisimple non-simple groups (S³/SO(3)-bundles).
    TypeIII,
    /// Generalized Wallach spaces (three-summand reduction).
    GeneralizedWallach,
    /// S³-bundles over a product of two copies of an irreducible base.
    S3OverProduct,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::TypeI => "TypeI",
            Family::TypeII => "TypeII",
            Family::TypeIII => "TypeIII",
            Family::GeneralizedWallach => "GeneralizedWallach",
            Family::S3OverProduct => "S3OverProduct",
        };
        f.write_str(s)
    }
}

/// Display strings for the groups of the homogeneous fibration
/// `H/K → G/K → G/H`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Groups {
    #[serde(rename = "K")]
    pub k: String,
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "G")]
    pub g: String,
}

/// One principal-orbit record with resolved structural data.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    pub name: String,
    pub family: Family,
    pub groups: Groups,
    pub d1: u32,
    pub d2: u32,
    /// Family-specific parameters (alpha, beta, c1s, c2s, cstar, a1, dimM, m).
    pub params: BTreeMap<String, Rational>,
    /// Structural constant; computed from the family formula when possible.
    pub a: Rational,
    pub expected: Option<VerdictTag>,
}

impl OrbitRecord {
    pub fn triple(&self) -> Result<StructuralTriple, CatalogError> {
        StructuralTriple::new(self.d1, self.d2, self.a.clone()).map_err(|source| {
            CatalogError::Dimensions {
                record: self.name.clone(),
                source,
            }
        })
    }
}

fn check_open_unit(param: &'static str, v: &Rational) -> Result<(), CatalogError> {
    if v.is_positive() && (&Rational::one() - v).is_positive() {
        Ok(())
    } else {
        Err(CatalogError::ParamRange {
            param,
            value: v.clone(),
            constraint: "(0, 1)",
        })
    }
}

/// `A = (1−α)·α·(2c₁*+1)/(2c₂*+1)² · (d₂−1)²/(d₁−1)` for two-summand orbits
/// with inequivalent summands.
pub fn a_type_one(
    alpha: &Rational,
    c1s: &Rational,
    c2s: &Rational,
    d1: u32,
    d2: u32,
) -> Result<Rational, CatalogError> {
    check_open_unit("alpha", alpha)?;
    let one = Rational::one();
    let num = (&one - alpha) * alpha * (rat(2) * c1s + &one);
    let den = (rat(2) * c2s + &one).pow(2);
    Ok(num / den * ratq((d2 as i64 - 1).pow(2), d1 as i64 - 1))
}

/// `A = a₁(1−2a₁)·(d₂−1)²/(d₁−1)` for generalized Wallach reductions.
pub fn a_generalized_wallach(a1: &Rational, d1: u32, d2: u32) -> Result<Rational, CatalogError> {
    if !a1.is_positive() || !(&ratq(1, 2) - a1).is_positive() {
        return Err(CatalogError::ParamRange {
            param: "a1",
            value: a1.clone(),
            constraint: "(0, 1/2)",
        });
    }
    Ok(a1 * &(Rational::one() - rat(2) * a1) * ratq((d2 as i64 - 1).pow(2), d1 as i64 - 1))
}

/// `A = α(1−α)/(d₂ + 2·dim(M)(1−β) + 6(1−α))² · d₂²(d₂−1)²/2` for SO(3)- and
/// S³-bundles over strongly isotropy irreducible bases (`d₁ = 3`; `β` unused
/// when `dim(M) = 0`).
pub fn a_type_three(
    alpha: &Rational,
    beta: Option<&Rational>,
    dim_m: u32,
    d2: u32,
) -> Result<Rational, CatalogError> {
    check_open_unit("alpha", alpha)?;
    let one = Rational::one();
    let beta_term = if dim_m == 0 {
        Rational::zero()
    } else {
        let beta = beta.ok_or(CatalogError::ParamRange {
            param: "beta",
            value: rat(0),
            constraint: "required when dimM > 0",
        })?;
        if beta.is_negative() || (beta - &one).is_positive() {
            return Err(CatalogError::ParamRange {
                param: "beta",
                value: beta.clone(),
                constraint: "[0, 1]",
            });
        }
        rat(2 * dim_m as i64) * (&one - beta)
    };
    let den = (rat(d2 as i64) + beta_term + rat(6) * (&one - alpha)).pow(2);
    Ok(alpha * &(&one - alpha) / den * ratq((d2 as i64).pow(2) * (d2 as i64 - 1).pow(2), 2))
}

/// `A = 2α(1−α)/(1+2c*)² · (d₂−1)²/(d₁−1)` for S³-bundles over a product of
/// two copies of an irreducible base.
pub fn a_s3_over_product(
    alpha: &Rational,
    cstar: &Rational,
    d1: u32,
    d2: u32,
) -> Result<Rational, CatalogError> {
    check_open_unit("alpha", alpha)?;
    let one = Rational::one();
    let den = (&one + rat(2) * cstar).pow(2);
    Ok(rat(2) * alpha * (&one - alpha) / den * ratq((d2 as i64 - 1).pow(2), d1 as i64 - 1))
}

/// Raw JSON shapes.
#[derive(Deserialize)]
struct RawCatalog {
    version: u32,
    records: Vec<RawRecord>,
}

#[derive(Deserialize)]
struct RawRecord {
    name: String,
    family: Family,
    groups: Groups,
    d1: u32,
    d2: u32,
    #[serde(default)]
    params: BTreeMap<String, String>,
    #[serde(rename = "A", default)]
    a: Option<String>,
    #[serde(default)]
    expected: Option<String>,
}

fn parse_tag(record: &str, tag: &str) -> Result<VerdictTag, CatalogError> {
    Ok(match tag {
        "ExistenceProduct" => VerdictTag::ExistenceProduct,
        "Existence" => VerdictTag::Existence,
        "TwoMetricsNumeric" => VerdictTag::TwoMetricsNumeric,
        "NonexistenceBohm" => VerdictTag::NonexistenceBohm,
        "NonexistenceTwoSummands" => VerdictTag::NonexistenceTwoSummands,
        "Indeterminable" => VerdictTag::Indeterminable,
        _ => {
            return Err(CatalogError::BadTag {
                record: record.to_string(),
                tag: tag.to_string(),
            })
        }
    })
}

/// Compute `A` from the family formula, or `None` when the family carries no
/// formula (TypeII) or the formula parameters are absent (e.g. rows whose `A`
/// is tabulated directly).
fn formula_a(
    family: Family,
    params: &BTreeMap<String, Rational>,
    d1: u32,
    d2: u32,
) -> Result<Option<Rational>, CatalogError> {
    let get = |key: &str| params.get(key);
    Ok(match family {
        Family::TypeI => match (get("alpha"), get("c1s"), get("c2s")) {
            (Some(alpha), Some(c1s), Some(c2s)) => Some(a_type_one(alpha, c1s, c2s, d1, d2)?),
            _ => None,
        },
        Family::TypeII => None,
        Family::TypeIII => match (get("alpha"), get("dimM")) {
            (Some(alpha), Some(dim_m)) => {
                let int_err = || CatalogError::ParamRange {
                    param: "dimM",
                    value: dim_m.clone(),
                    constraint: "nonnegative integer",
                };
                let n = u32::try_from(dim_m.numer().clone()).map_err(|_| int_err())?;
                if dim_m != &rat(n as i64) {
                    return Err(int_err());
                }
                Some(a_type_three(alpha, get("beta"), n, d2)?)
            }
            _ => None,
        },
        Family::GeneralizedWallach => match get("a1") {
            Some(a1) => Some(a_generalized_wallach(a1, d1, d2)?),
            _ => None,
        },
        Family::S3OverProduct => match (get("alpha"), get("cstar")) {
            (Some(alpha), Some(cstar)) => Some(a_s3_over_product(alpha, cstar, d1, d2)?),
            _ => None,
        },
    })
}

fn resolve(raw: RawRecord) -> Result<OrbitRecord, CatalogError> {
    let mut params = BTreeMap::new();
    for (key, value) in &raw.params {
        let v = Rational::from_str(value).map_err(|_| CatalogError::BadRational {
            record: raw.name.clone(),
            param: key.clone(),
            value: value.clone(),
        })?;
        params.insert(key.clone(), v);
    }
    let stated = match &raw.a {
        Some(s) => Some(
            Rational::from_str(s).map_err(|_| CatalogError::BadRational {
                record: raw.name.clone(),
                param: "A".to_string(),
                value: s.clone(),
            })?,
        ),
        None => None,
    };
    let computed = formula_a(raw.family, &params, raw.d1, raw.d2)?;
    let a = match (computed, stated) {
        (Some(c), Some(s)) => {
            if c != s {
                return Err(CatalogError::AMismatch {
                    record: raw.name,
                    computed: c,
                    stated: s,
                });
            }
            c
        }
        (Some(c), None) => c,
        (None, Some(s)) => s,
        (None, None) => {
            return Err(CatalogError::MissingParam {
                record: raw.name,
                param: "A (no family formula applies)".to_string(),
            })
        }
    };
    let expected = match &raw.expected {
        Some(tag) => Some(parse_tag(&raw.name, tag)?),
        None => None,
    };
    let record = OrbitRecord {
        name: raw.name,
        family: raw.family,
        groups: raw.groups,
        d1: raw.d1,
        d2: raw.d2,
        params,
        a,
        expected,
    };
    record.triple()?; // dimension / sign validation
    Ok(record)
}

/// Parse and validate a catalog document.
pub fn parse_catalog(json: &str) -> Result<Vec<OrbitRecord>, CatalogError> {
    let raw: RawCatalog = serde_json::from_str(json)?;
    if raw.version != 1 {
        return Err(CatalogError::Version(raw.version));
    }
    raw.records.into_iter().map(resolve).collect()
}

/// The catalog shipped with the crate.
pub fn builtin_catalog() -> Vec<OrbitRecord> {
    parse_catalog(BUILTIN_JSON).expect("embedded catalog resource is valid")
}

/// Load the catalog, honoring the `EINCOH_CATALOG` environment override.
pub fn load_catalog() -> Result<Vec<OrbitRecord>, CatalogError> {
    match std::env::var_os(CATALOG_ENV) {
        Some(path) => parse_catalog(&std::fs::read_to_string(path)?),
        None => Ok(builtin_catalog()),
    }
}

/// Outcome of classifying one record against its expected verdict.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub expected: Option<VerdictTag>,
    pub actual: VerdictTag,
    pub ok: bool,
}

/// Classify every record and compare with the recorded expectations.
pub fn check_catalog(records: &[OrbitRecord]) -> Result<Vec<CheckOutcome>, CatalogError> {
    records
        .iter()
        .map(|r| {
            let actual = classify(&r.triple()?).tag;
            Ok(CheckOutcome {
                name: r.name.clone(),
                expected: r.expected,
                actual,
                ok: r.expected.map_or(true, |e| e == actual),
            })
        })
        .collect()
}

/// Render records as an aligned text table with the decision thresholds.
pub fn render_table(records: &[OrbitRecord]) -> String {
    let mut rows = vec![vec![
        "name".to_string(),
        "K".to_string(),
        "H".to_string(),
        "G".to_string(),
        "d1".to_string(),
        "d2".to_string(),
        "A".to_string(),
        "Psi".to_string(),
        "verdict".to_string(),
    ]];
    for r in records {
        let verdict = match r.triple() {
            Ok(t) => classify(&t).tag.to_string(),
            Err(_) => "invalid".to_string(),
        };
        rows.push(vec![
            r.name.clone(),
            r.groups.k.clone(),
            r.groups.h.clone(),
            r.groups.g.clone(),
            r.d1.to_string(),
            r.d2.to_string(),
            r.a.to_string(),
            psi(r.d1, r.d2).map_or_else(|_| "-".to_string(), |p| p.to_string()),
            verdict,
        ]);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|row| row[c].len()).max().unwrap())
        .collect();
    let mut out = String::new();
    for row in &rows {
        for (cell, w) in row.iter().zip(&widths) {
            out.push_str(&format!("{cell:<w$}  "));
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    }
    out
}

/// `m`-indexed infinite families with their validity range and the regime of
/// expected verdicts.
#[derive(Clone, Copy, Debug)]
pub struct FamilyGenerator {
    pub name: &'static str,
    pub family: Family,
    pub m_min: u32,
    /// `None` = unbounded.
    pub m_max: Option<u32>,
    pub make: fn(u32) -> OrbitRecord,
    /// Human-readable summary of the verdict regimes in `m`.
    pub regimes: &'static str,
}

fn build(
    name: String,
    family: Family,
    groups: Groups,
    d1: u32,
    d2: u32,
    params: &[(&str, Rational)],
    a: Option<Rational>,
    expected: Option<VerdictTag>,
) -> OrbitRecord {
    let params: BTreeMap<String, Rational> = params
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    let a = match a {
        Some(a) => a,
        None => formula_a(family, &params, d1, d2)
            .expect("family parameters in range")
            .expect("family formula applies"),
    };
    OrbitRecord {
        name,
        family,
        groups,
        d1,
        d2,
        params,
        a,
        expected,
    }
}

/// Twistor spaces over the quaternionic projective spaces: `(2, 4m, χ̃_{2,4m})`.
pub fn twistor_sp_record(m: u32) -> OrbitRecord {
    let mi = m as i64;
    build(
        format!("CP{} twistor over HP{m}", 2 * m + 1),
        Family::TypeI,
        Groups {
            k: format!("Sp({m})xU(1)"),
            h: format!("Sp({m})xSp(1)"),
            g: format!("Sp({})", m + 1),
        },
        2,
        4 * m,
        &[
            ("alpha", ratq(2, mi + 2)),
            ("c1s", ratq(1, 2)),
            ("c2s", ratq(1, 2)),
            ("m", rat(mi)),
        ],
        None,
        Some(VerdictTag::Existence),
    )
}

/// Konishi bundles over the quaternionic projective spaces:
/// `(3, 4m, 4m(4m−1)²/(4m+8)²)`.
pub fn konishi_record(m: u32) -> OrbitRecord {
    let mi = m as i64;
    build(
        format!("Konishi bundle over HP{m}"),
        Family::TypeIII,
        Groups {
            k: format!("Sp({m})x diag Sp(1)"),
            h: format!("Sp({m})xSp(1)xSp(1)"),
            g: format!("Sp({})xSp(1)", m + 1),
        },
        3,
        4 * m,
        &[("m", rat(mi))],
        Some(ratq(4 * mi * (4 * mi - 1).pow(2), (4 * mi + 8).pow(2))),
        Some(VerdictTag::Existence),
    )
}

/// Generalized Wallach spaces `SU(m+2)/S(U(m)×U(1)×U(1))`:
/// `(2, 4m, m(4m−1)²/(m+2)²)`.
pub fn gw_su_record(m: u32) -> OrbitRecord {
    let mi = m as i64;
    build(
        format!("SU({})/S(U({m})xU(1)xU(1))", m + 2),
        Family::GeneralizedWallach,
        Groups {
            k: format!("S(U({m})xU(1)xU(1))"),
            h: format!("S(U({m})xU(2))"),
            g: format!("SU({})", m + 2),
        },
        2,
        4 * m,
        &[("a1", ratq(mi, 2 * (mi + 2))), ("m", rat(mi))],
        None,
        Some(VerdictTag::Existence),
    )
}

/// Generalized Wallach spaces `Sp(m+2)/[Sp(m)×Sp(1)×Sp(1)]`:
/// `(4, 8m, (m/2)(8m−1)²/(m+3)²)`. Indeterminable for `m ≤ 17`, existence for
/// `m ≥ 27`; the verdict in between is not tabulated.
pub fn gw_sp_record(m: u32) -> OrbitRecord {
    let mi = m as i64;
    let expected = if m <= 17 {
        Some(VerdictTag::Indeterminable)
    } else if m >= 27 {
        Some(VerdictTag::Existence)
    } else {
        None
    };
    build(
        format!("Sp({})/[Sp({m})xSp(1)xSp(1)]", m + 2),
        Family::GeneralizedWallach,
        Groups {
            k: format!("Sp({m})xSp(1)xSp(1)"),
            h: format!("Sp({m})xSp(2)"),
            g: format!("Sp({})", m + 2),
        },
        4,
        8 * m,
        &[("a1", ratq(mi, 2 * (mi + 3))), ("m", rat(mi))],
        None,
        expected,
    )
}

/// S³-bundles over `HPm × HPm`: `(3, 8m, m(8m−1)²/(2(m+2)²))`. Indeterminable
/// for `m ≤ 4`, existence for `m ≥ 10`; in between not tabulated.
pub fn s3_sp_record(m: u32) -> OrbitRecord {
    let mi = m as i64;
    let expected = if m <= 4 {
        Some(VerdictTag::Indeterminable)
    } else if m >= 10 {
        Some(VerdictTag::Existence)
    } else {
        None
    };
    build(
        format!("S3-bundle over HP{m}xHP{m}"),
        Family::S3OverProduct,
        Groups {
            k: format!("Sp({m})x diag Sp(1)xSp({m})"),
            h: format!("Sp({m})xSp(1)xSp({m})xSp(1)"),
            g: format!("Sp({})xSp({})", m + 1, m + 1),
        },
        3,
        8 * m,
        &[
            ("alpha", ratq(2, mi + 2)),
            ("cstar", ratq(1, 2)),
            ("m", rat(mi)),
        ],
        None,
        expected,
    )
}

/// The shipped `m`-indexed family generators.
pub fn family_generators() -> Vec<FamilyGenerator> {
    vec![
        FamilyGenerator {
            name: "twistor over HP^m",
            family: Family::TypeI,
            m_min: 1,
            m_max: None,
            make: twistor_sp_record,
            regimes: "existence for all m",
        },
        FamilyGenerator {
            name: "Konishi bundle over HP^m",
            family: Family::TypeIII,
            m_min: 1,
            m_max: None,
            make: konishi_record,
            regimes: "existence for all m",
        },
        FamilyGenerator {
            name: "generalized Wallach SU(m+2)",
            family: Family::GeneralizedWallach,
            m_min: 1,
            m_max: None,
            make: gw_su_record,
            regimes: "existence for all m",
        },
        FamilyGenerator {
            name: "generalized Wallach Sp(m+2)",
            family: Family::GeneralizedWallach,
            m_min: 1,
            m_max: None,
            make: gw_sp_record,
            regimes: "indeterminable for m <= 17, existence for m >= 27",
        },
        FamilyGenerator {
            name: "S3-bundle over HP^m x HP^m",
            family: Family::S3OverProduct,
            m_min: 1,
            m_max: None,
            make: s3_sp_record,
            regimes: "indeterminable for m <= 4, existence for m >= 10",
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thresholds::chi_tilde;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn type_one_formula_values() {
        let half = ratq(1, 2);
        assert_eq!(
            a_type_one(&q("6/7"), &half, &half, 7, 8).unwrap(),
            ratq(1, 2)
        );
        assert_eq!(a_type_one(&q("5/9"), &half, &half, 11, 64).unwrap(), rat(49));
        assert_eq!(
            a_type_one(&q("4/5"), &half, &half, 5, 20).unwrap(),
            ratq(361, 50)
        );
        // Parameters from the general formula reproduce the tabulated value
        // for the mixed-Casimir case as well.
        assert_eq!(
            a_type_one(&q("5/7"), &q("2/5"), &half, 7, 14).unwrap(),
            ratq(507, 196)
        );
        assert!(a_type_one(&rat(1), &half, &half, 2, 4).is_err());
    }

    #[test]
    fn generalized_wallach_formula_values() {
        assert_eq!(
            a_generalized_wallach(&ratq(3, 10), 2, 12).unwrap(),
            ratq(363, 25)
        );
        assert_eq!(
            a_generalized_wallach(&ratq(1, 8), 4, 8).unwrap(),
            ratq(49, 32)
        );
        assert_eq!(a_generalized_wallach(&ratq(1, 9), 8, 16).unwrap(), ratq(25, 9));
        assert!(a_generalized_wallach(&ratq(1, 2), 2, 4).is_err());
    }

    #[test]
    fn type_three_formula_values() {
        assert_eq!(a_type_three(&ratq(1, 15), None, 0, 7).unwrap(), ratq(28, 81));
        assert_eq!(
            a_type_three(&ratq(1, 56), None, 0, 11).unwrap(),
            ratq(1375, 3698)
        );
        assert_eq!(
            a_type_three(&ratq(1, 36), Some(&ratq(4, 9)), 14, 35).unwrap(),
            ratq(10115, 1682)
        );
        // beta required when the isotropy group is nontrivial.
        assert!(a_type_three(&ratq(1, 36), None, 14, 35).is_err());
    }

    #[test]
    fn s3_over_product_formula_values() {
        assert_eq!(
            a_s3_over_product(&ratq(1, 15), &ratq(2, 5), 3, 14).unwrap(),
            ratq(2366, 729)
        );
        assert_eq!(
            a_s3_over_product(&ratq(1, 56), &ratq(15, 56), 3, 22).unwrap(),
            ratq(24255, 7396)
        );
        assert_eq!(
            a_s3_over_product(&ratq(2, 3), &ratq(1, 2), 3, 8).unwrap(),
            ratq(49, 18)
        );
    }

    #[test]
    fn builtin_catalog_loads_and_is_large_enough() {
        let records = builtin_catalog();
        assert!(records.len() >= 30, "only {} records", records.len());
        // Specific anchors.
        let by_name = |n: &str| records.iter().find(|r| r.name == n).unwrap();
        let spin8 = by_name("Spin(8)/G2");
        assert_eq!((spin8.d1, spin8.d2), (7, 7));
        assert_eq!(spin8.a, ratq(3, 8));
        assert_eq!(spin8.expected, Some(VerdictTag::NonexistenceTwoSummands));
        let f4 = by_name("F4/Spin(8)");
        assert_eq!((f4.d1, f4.d2), (8, 16));
        assert_eq!(f4.a, ratq(25, 9));
        assert_eq!(f4.expected, Some(VerdictTag::NonexistenceTwoSummands));
        let sp4 = by_name("Sp(4)/[Sp(2)U(1)]");
        assert_eq!((sp4.d1, sp4.d2), (5, 20));
        assert_eq!(sp4.a, ratq(361, 50));
        assert_eq!(sp4.expected, Some(VerdictTag::Indeterminable));
    }

    #[test]
    fn every_expected_verdict_matches_classification() {
        let records = builtin_catalog();
        let outcomes = check_catalog(&records).unwrap();
        let bad: Vec<_> = outcomes.iter().filter(|o| !o.ok).collect();
        assert!(bad.is_empty(), "mismatched records: {bad:?}");
    }

    #[test]
    fn twistor_rows_sit_exactly_on_the_borderline() {
        // Every twistor record's A equals the d1 = 2 existence borderline.
        for r in builtin_catalog() {
            if r.family == Family::TypeI && r.expected == Some(VerdictTag::Existence) {
                assert_eq!(r.a, chi_tilde(2, r.d2).unwrap(), "record {}", r.name);
            }
        }
    }

    #[test]
    fn generators_agree_with_shipped_rows() {
        let records = builtin_catalog();
        for (gen, m) in [
            (twistor_sp_record as fn(u32) -> OrbitRecord, 3),
            (konishi_record, 2),
            (gw_su_record, 3),
            (gw_sp_record, 17),
            (s3_sp_record, 10),
        ] {
            let generated = gen(m);
            let shipped = records
                .iter()
                .find(|r| r.name == generated.name)
                .unwrap_or_else(|| panic!("no shipped row named {}", generated.name));
            assert_eq!(shipped.a, generated.a, "{}", generated.name);
            assert_eq!(shipped.d1, generated.d1);
            assert_eq!(shipped.d2, generated.d2);
            assert_eq!(shipped.expected, generated.expected);
        }
    }

    #[test]
    fn stated_a_mismatch_is_rejected() {
        let doc = r#"{"version":1,"records":[{
            "name":"bad","family":"TypeI",
            "groups":{"K":"k","H":"h","G":"g"},
            "d1":7,"d2":8,
            "params":{"alpha":"6/7","c1s":"1/2","c2s":"1/2"},
            "A":"1/3"}]}"#;
        assert!(matches!(
            parse_catalog(doc),
            Err(CatalogError::AMismatch { .. })
        ));
    }

    #[test]
    fn schema_violations_are_rejected() {
        assert!(matches!(
            parse_catalog(r#"{"version":2,"records":[]}"#),
            Err(CatalogError::Version(2))
        ));
        let no_a = r#"{"version":1,"records":[{
            "name":"x","family":"TypeII",
            "groups":{"K":"k","H":"h","G":"g"},
            "d1":3,"d2":3}]}"#;
        assert!(matches!(
            parse_catalog(no_a),
            Err(CatalogError::MissingParam { .. })
        ));
        let bad_tag = r#"{"version":1,"records":[{
            "name":"x","family":"TypeII",
            "groups":{"K":"k","H":"h","G":"g"},
            "d1":3,"d2":3,"A":"1/8","expected":"Maybe"}]}"#;
        assert!(matches!(
            parse_catalog(bad_tag),
            Err(CatalogError::BadTag { .. })
        ));
    }

    #[test]
    fn catalog_file_override_loads() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.json");
        std::fs::write(
            &path,
            r#"{"version":1,"records":[{
                "name":"S3xS3","family":"TypeII",
                "groups":{"K":"k","H":"h","G":"g"},
                "d1":3,"d2":3,"A":"1/8","expected":"Existence"}]}"#,
        )
        .unwrap();
        std::env::set_var(CATALOG_ENV, &path);
        let loaded = load_catalog().unwrap();
        std::env::remove_var(CATALOG_ENV);
        assert_eq!(loaded.len(), 1);
        assert_eq!(loaded[0].a, ratq(1, 8));
    }

    #[test]
    fn rendered_table_contains_thresholds() {
        let records = builtin_catalog();
        let nonexistence: Vec<_> = records
            .iter()
            .filter(|r| r.expected == Some(VerdictTag::NonexistenceTwoSummands))
            .cloned()
            .collect();
        let table = render_table(&nonexistence);
        assert!(table.contains("8879/20886"));
        assert!(table.contains("507/196"));
        assert!(table.contains("NonexistenceTwoSummands"));
    }
}
