//! Growth classification of codimension sequences and nilpotency
//! certificates for intersections of two word varieties.
//!
//! The growth constants are the exact extremes of `c_n / n^k` over the
//! computed range, not asymptotic bounds. A template counts as fitting when
//! dropping the last point moves neither constant by more than
//! [`STABILITY_RATIO`].

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::algebra::{AlgebraContext, ContextKind};
use crate::codim::{codim_table, codimension_intersection_with, ComputeOptions};
use crate::error::{Error, Result};
use crate::words::{disjointness_degree, WordSpec};

/// Largest relative change of a constant between `n_max - 1` and `n_max`
/// that still counts as stable.
pub const STABILITY_RATIO: Ratio<i64> = Ratio::new_raw(1, 10);

/// First degree used when fitting constants; below it every context has the
/// same codimensions.
pub const FIT_START: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Growth {
    Nilpotent,
    AtMostLinear,
    #[serde(rename = "Superlinear-AtMostQuadratic")]
    SuperlinearAtMostQuadratic,
    Inconclusive,
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Growth::Nilpotent => "Nilpotent",
            Growth::AtMostLinear => "AtMostLinear",
            Growth::SuperlinearAtMostQuadratic => "Superlinear-AtMostQuadratic",
            Growth::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlopeClass {
    Rational,
    QuadraticIrrational,
}

/// `c_n ~ n^1` or `c_n ~ n^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Template {
    Linear,
    Quadratic,
}

impl Template {
    fn exponent(self) -> u32 {
        match self {
            Template::Linear => 1,
            Template::Quadratic => 2,
        }
    }

    fn other(self) -> Template {
        match self {
            Template::Linear => Template::Quadratic,
            Template::Quadratic => Template::Linear,
        }
    }
}

fn as_fraction<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    /// Degrees covered by `sequence`, inclusive.
    pub range: (usize, usize),
    pub sequence: Vec<usize>,
    pub classification: Growth,
    /// Template the constants refer to.
    pub template: Template,
    #[serde(serialize_with = "as_fraction")]
    pub c1: Ratio<i64>,
    #[serde(serialize_with = "as_fraction")]
    pub c2: Ratio<i64>,
    /// `None` for the free algebra and for mixed contexts.
    pub slope_class: Option<SlopeClass>,
}

fn slope_class(ctx: &AlgebraContext) -> Option<SlopeClass> {
    match ctx.kind() {
        ContextKind::FreeA => None,
        ContextKind::Quotient(spec) if spec.is_sturmian() => Some(SlopeClass::QuadraticIrrational),
        ContextKind::Quotient(_) => Some(SlopeClass::Rational),
    }
}

/// `(min, max)` of `c_n / n^k` over the given `(n, c_n)` points.
fn constants(points: &[(usize, usize)], template: Template) -> (Ratio<i64>, Ratio<i64>) {
    let k = template.exponent();
    let ratios = points
        .iter()
        .map(|&(n, c)| Ratio::new(c as i64, (n as i64).pow(k)));
    let min = ratios.clone().min().expect("nonempty fit range");
    let max = ratios.max().expect("nonempty fit range");
    (min, max)
}

fn close(now: Ratio<i64>, before: Ratio<i64>) -> bool {
    let diff = if now > before {
        now - before
    } else {
        before - now
    };
    diff <= before * STABILITY_RATIO
}

fn stable(points: &[(usize, usize)], template: Template) -> bool {
    let (lo, hi) = constants(points, template);
    let (lo0, hi0) = constants(&points[..points.len() - 1], template);
    close(lo, lo0) && close(hi, hi0)
}

/// `c_n / n` strictly increasing from `max(3, n_max / 2)` on.
fn superlinear_tail(points: &[(usize, usize)]) -> bool {
    let n_max = points.last().map_or(0, |p| p.0);
    let start = FIT_START.max(n_max / 2);
    let tail: Vec<Ratio<i64>> = points
        .iter()
        .filter(|p| p.0 >= start)
        .map(|&(n, c)| Ratio::new(c as i64, n as i64))
        .collect();
    tail.windows(2).all(|w| w[0] < w[1])
}

/// Classifies `c_1, ..., c_{n_max}` (`sequence[i]` is `c_{i+1}`). Rational
/// slopes are tried against the linear template first, everything else
/// against the quadratic one.
pub fn classify_sequence(sequence: &[usize], slope: Option<SlopeClass>) -> Result<GrowthReport> {
    let n_max = sequence.len();
    if n_max < FIT_START + 1 {
        return Err(Error::InvalidArgument(format!(
            "growth classification needs n_max >= {}, got {n_max}",
            FIT_START + 1
        )));
    }
    let points: Vec<(usize, usize)> = (FIT_START..=n_max).map(|n| (n, sequence[n - 1])).collect();
    let primary = match slope {
        Some(SlopeClass::Rational) => Template::Linear,
        _ => Template::Quadratic,
    };
    let report = |classification, template| {
        let (c1, c2) = constants(&points, template);
        GrowthReport {
            range: (FIT_START, n_max),
            sequence: points.iter().map(|p| p.1).collect(),
            classification,
            template,
            c1,
            c2,
            slope_class: slope,
        }
    };

    if points.iter().any(|p| p.1 == 0) {
        return Ok(report(Growth::Nilpotent, Template::Linear));
    }
    for template in [primary, primary.other()] {
        if !stable(&points, template) {
            continue;
        }
        match template {
            Template::Linear => return Ok(report(Growth::AtMostLinear, template)),
            Template::Quadratic if superlinear_tail(&points) => {
                return Ok(report(Growth::SuperlinearAtMostQuadratic, template))
            }
            Template::Quadratic => {}
        }
    }
    Ok(report(Growth::Inconclusive, primary))
}

pub fn classify_growth(ctx: &AlgebraContext, n_max: usize) -> Result<GrowthReport> {
    classify_growth_with(ctx, n_max, ComputeOptions::default())
}

pub fn classify_growth_with(
    ctx: &AlgebraContext,
    n_max: usize,
    opts: ComputeOptions,
) -> Result<GrowthReport> {
    classify_intersection_with(std::slice::from_ref(ctx), n_max, opts)
}

/// Growth of the intersection of the varieties of `ctxs`.
pub fn classify_intersection_with(
    ctxs: &[AlgebraContext],
    n_max: usize,
    opts: ComputeOptions,
) -> Result<GrowthReport> {
    if n_max < FIT_START + 1 {
        return Err(Error::InvalidArgument(format!(
            "growth classification needs n_max >= {}, got {n_max}",
            FIT_START + 1
        )));
    }
    let sequence: Vec<usize> = codim_table(ctxs, n_max, opts)?
        .iter()
        .map(|r| r.c_n)
        .collect();
    let mut classes = ctxs.iter().map(slope_class);
    let first = classes.next().flatten();
    let slope = if classes.all(|c| c == first) {
        first
    } else {
        None
    };
    classify_sequence(&sequence, slope)
}

fn display_spec<S: Serializer>(spec: &WordSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(spec)
}

/// Evidence that the intersection of two word varieties is nilpotent:
/// the words share no factor of length `m`, so every product of degree
/// `m + 2` vanishes on both algebras' common identities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotencyCertificate {
    #[serde(serialize_with = "display_spec")]
    pub spec_a: WordSpec,
    #[serde(serialize_with = "display_spec")]
    pub spec_b: WordSpec,
    pub m: usize,
    pub verified_degree: usize,
    pub rank_checked: bool,
}

pub fn nilpotency_certificate(
    a: &WordSpec,
    b: &WordSpec,
    max_n: usize,
    check_rank: bool,
) -> Result<NilpotencyCertificate> {
    nilpotency_certificate_with(a, b, max_n, check_rank, ComputeOptions::default())
}

/// Finds the disjointness degree `m <= max_n` and, with `check_rank`,
/// confirms `c_{m+2} = 0` for the intersection.
pub fn nilpotency_certificate_with(
    a: &WordSpec,
    b: &WordSpec,
    max_n: usize,
    check_rank: bool,
    opts: ComputeOptions,
) -> Result<NilpotencyCertificate> {
    let m = disjointness_degree(a, b, max_n)?.ok_or(Error::NoCertificate { max_n })?;
    let degree = m + 2;
    if check_rank {
        let ctxs = [
            AlgebraContext::quotient(a.clone(), degree + 1)?,
            AlgebraContext::quotient(b.clone(), degree + 1)?,
        ];
        let c_n = codimension_intersection_with(&ctxs, degree, opts)?.c_n;
        if c_n != 0 {
            return Err(Error::CertificateRefuted { degree, c_n });
        }
    }
    Ok(NilpotencyCertificate {
        spec_a: a.clone(),
        spec_b: b.clone(),
        m,
        verified_degree: degree,
        rank_checked: check_rank,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    /// The one-row shape `(n)`.
    Row,
    /// The hook `(n-1, 1)`.
    Hook,
}

/// Degree of the irreducible `S_n` character of `shape`.
pub fn character_degree(shape: Shape, n: usize) -> Result<usize> {
    match shape {
        Shape::Row if n >= 1 => Ok(1),
        Shape::Hook if n >= 2 => Ok(n - 1),
        _ => Err(Error::InvalidArgument(format!(
            "no shape {shape:?} for n = {n}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(spec: &str) -> AlgebraContext {
        AlgebraContext::quotient(spec.parse().unwrap(), 32).unwrap()
    }

    fn spec(s: &str) -> WordSpec {
        s.parse().unwrap()
    }

    #[test]
    fn rational_slopes_are_linear() {
        for s in ["mech:1/2", "mech:1/3", "periodic:001"] {
            let r = classify_growth(&ctx(s), 10).unwrap();
            assert_eq!(r.classification, Growth::AtMostLinear, "{s}");
            assert_eq!(r.template, Template::Linear);
            assert_eq!(r.slope_class, Some(SlopeClass::Rational));
        }
        let half = classify_growth(&ctx("mech:1/2"), 10).unwrap();
        assert_eq!((half.c1, half.c2), (Ratio::from(2), Ratio::from(2)));
        assert_eq!(half.sequence, (3..=10).map(|n| 2 * n).collect::<Vec<_>>());
    }

    #[test]
    fn golden_slope_is_quadratic() {
        let r = classify_growth(&ctx("mech:(3-1*sqrt(5))/2"), 10).unwrap();
        assert_eq!(r.classification, Growth::SuperlinearAtMostQuadratic);
        assert_eq!(r.slope_class, Some(SlopeClass::QuadraticIrrational));
        assert_eq!(r.sequence, (3..=10).map(|n| n * n - 1).collect::<Vec<_>>());
        assert_eq!((r.c1, r.c2), (Ratio::new(8, 9), Ratio::new(99, 100)));
    }

    #[test]
    fn free_algebra_fits_neither_template() {
        let r = classify_growth(&AlgebraContext::free(32).unwrap(), 8).unwrap();
        assert_eq!(r.classification, Growth::Inconclusive);
        assert_eq!(r.slope_class, None);
    }

    #[test]
    fn disjoint_intersection_is_nilpotent() {
        let r = classify_intersection_with(
            &[ctx("mech:1/3"), ctx("mech:1/2")],
            8,
            ComputeOptions::default(),
        )
        .unwrap();
        assert_eq!(r.classification, Growth::Nilpotent);
        assert_eq!(&r.sequence[3..], &[0, 0, 0]);
    }

    #[test]
    fn sequence_rules() {
        // exponential: never stabilizes
        let exp: Vec<usize> = (1..=10).map(|n| 1 << n).collect();
        assert_eq!(
            classify_sequence(&exp, None).unwrap().classification,
            Growth::Inconclusive
        );
        // quadratic but c_n / n flat at the end: falls back to linear
        let flat = [1, 2, 9, 16, 20, 24, 28, 32];
        let r = classify_sequence(&flat, None).unwrap();
        assert_eq!(r.classification, Growth::AtMostLinear);
        assert_eq!(r.template, Template::Linear);
        assert!(classify_sequence(&[1, 2, 3], None).is_err());
    }

    #[test]
    fn serialized_report_prints_fractions() {
        let r = classify_sequence(&[1, 2, 8, 12, 15, 18], Some(SlopeClass::Rational)).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["c1"], "8/3");
        assert_eq!(json["c2"], "3/1");
        assert_eq!(json["classification"], "AtMostLinear");
        assert_eq!(json["slope_class"], "rational");
    }

    #[test]
    fn certificates() {
        let c = nilpotency_certificate(&spec("mech:1/3"), &spec("mech:1/2"), 10, true).unwrap();
        assert_eq!((c.m, c.verified_degree, c.rank_checked), (4, 6, true));
        let c = nilpotency_certificate(&spec("periodic:0"), &spec("periodic:1"), 5, true).unwrap();
        assert_eq!((c.m, c.verified_degree), (1, 3));
        let same = spec("mech:2/5");
        assert!(matches!(
            nilpotency_certificate(&same, &same, 10, false),
            Err(Error::NoCertificate { max_n: 10 })
        ));
        let json = serde_json::to_value(
            nilpotency_certificate(&spec("mech:1/3"), &spec("mech:1/2"), 10, false).unwrap(),
        )
        .unwrap();
        assert_eq!(json["spec_a"], "mech:1/3");
        assert_eq!(json["m"], 4);
    }

    #[test]
    fn degrees() {
        assert_eq!(character_degree(Shape::Row, 7).unwrap(), 1);
        assert_eq!(character_degree(Shape::Hook, 7).unwrap(), 6);
        assert_eq!(character_degree(Shape::Hook, 2).unwrap(), 1);
        assert!(character_degree(Shape::Hook, 1).is_err());
    }
}
