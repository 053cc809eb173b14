//! The full per-polytope pipeline behind `analyze`.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::chow::signature_via_l;
use crate::error::Result;
use crate::fan::{classify, normal_fan, ConvexityClass, Fan};
use crate::invariants::{bound_report, dehn_sommerville_ok, h_vector, sigma, BoundReport, FVector, HVector, TheoremCase};
use crate::io::{display_string, display_string_opt};
use crate::polytope::{AngleClass, Polytope};
use crate::scalar::int_to_rational;
use crate::Rational;

fn h_strings<S: Serializer>(h: &HVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(h.counts().iter().map(ToString::to_string))
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub dim: usize,
    pub f: FVector,
    #[serde(serialize_with = "h_strings")]
    pub h: HVector,
    #[serde(serialize_with = "display_string")]
    pub sigma: BigInt,
    pub dehn_sommerville: bool,
    pub simple: bool,
    pub angle_class: AngleClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convexity: Option<ConvexityClass>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "display_string_opt")]
    pub m: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "display_string_opt")]
    pub chow_sigma: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub chow: bool,
    pub case: Option<TheoremCase>,
}

/// Rewrites a lower-dimensional polytope in its own lattice.
pub fn full_dimensional(p: &Polytope) -> Result<Polytope> {
    if p.is_full_dimensional() {
        Ok(p.clone())
    } else {
        Ok(p.project_full_dim()?.0)
    }
}

/// Angles are measured in the coordinates given; everything lattice-based
/// uses the polytope in its own lattice.
pub fn analyze(p: &Polytope, opts: AnalyzeOptions) -> Result<AnalysisReport> {
    let angle_class = p.angle_class();
    let full = full_dimensional(p)?;
    let f = full.f_vector();
    let h = h_vector(&f);
    let d = f.dim();
    let mut report = AnalysisReport {
        dim: d,
        sigma: sigma(&f),
        dehn_sommerville: dehn_sommerville_ok(&h),
        f,
        h,
        simple: full.is_simple(),
        angle_class,
        convexity: None,
        m: None,
        flag: None,
        bounds: None,
        chow_sigma: None,
        agreement: None,
        warnings: Vec::new(),
    };
    if !report.simple || d == 0 {
        return Ok(report);
    }
    let fan = normal_fan(&full)?;
    fill_fan_fields(&mut report, &fan, opts)?;
    Ok(report)
}

fn fill_fan_fields(report: &mut AnalysisReport, fan: &Fan, opts: AnalyzeOptions) -> Result<()> {
    let class = classify(fan)?.overall;
    let m = fan.m();
    report.convexity = Some(class);
    report.flag = Some(fan.is_flag());
    if report.dim.is_multiple_of(2) {
        report.bounds = Some(bound_report(&report.f, &m, class, opts.case)?);
    }
    report.m = Some(m);
    if opts.chow {
        if report.dim.is_multiple_of(2) {
            let chow = signature_via_l(fan)?;
            report.agreement = Some(chow == int_to_rational(&report.sigma));
            report.chow_sigma = Some(chow);
        } else {
            report.warnings.push(format!("signature is only defined in even dimension; d = {}", report.dim));
        }
    }
    Ok(())
}
