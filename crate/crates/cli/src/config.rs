//! Flat `key=value` experiment configuration.
//!
//! One key per line, `#` starts a comment, blank lines are skipped. Every
//! field has a per-experiment default, a file supplies any subset, and
//! command-line flags override file values key for key. Serialization
//! writes every field in a fixed order and parses back to an identical
//! configuration, so a written config is a complete, reproducible record
//! of a run.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use fourier_laplace::kernels::KernelMethod;
use fourier_laplace::spectral::Spectrum;

/// The six experiment entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    KernelBounds,
    Converge,
    MaximalIneq,
    TnSeries,
    AbelIdentity,
    DumpKernel,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::KernelBounds => "kernel-bounds",
            ExperimentKind::Converge => "converge",
            ExperimentKind::MaximalIneq => "maximal-ineq",
            ExperimentKind::TnSeries => "tn-series",
            ExperimentKind::AbelIdentity => "abel-identity",
            ExperimentKind::DumpKernel => "dump-kernel",
        }
    }
}

/// Summation method selector, the config-file spelling of [`KernelMethod`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodKind {
    Partial,
    Riesz,
    Cesaro,
    AbelRiesz,
}

impl MethodKind {
    pub fn with_orders(self, alpha: f64, tau: f64) -> KernelMethod {
        match self {
            MethodKind::Partial => KernelMethod::Partial,
            MethodKind::Riesz => KernelMethod::Riesz { alpha },
            MethodKind::Cesaro => KernelMethod::Cesaro { alpha },
            MethodKind::AbelRiesz => KernelMethod::AbelRiesz { alpha, tau },
        }
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodKind::Partial => "partial",
            MethodKind::Riesz => "riesz",
            MethodKind::Cesaro => "cesaro",
            MethodKind::AbelRiesz => "abel-riesz",
        })
    }
}

impl FromStr for MethodKind {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "partial" => Ok(MethodKind::Partial),
            "riesz" => Ok(MethodKind::Riesz),
            "cesaro" => Ok(MethodKind::Cesaro),
            "abel-riesz" => Ok(MethodKind::AbelRiesz),
            other => bail!("unknown method '{other}' (partial|riesz|cesaro|abel-riesz)"),
        }
    }
}

/// Test-function selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunctionKind {
    Bandlimited,
    Heat,
    Cap,
    Regularity,
}

impl fmt::Display for TestFunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TestFunctionKind::Bandlimited => "bandlimited",
            TestFunctionKind::Heat => "heat",
            TestFunctionKind::Cap => "cap",
            TestFunctionKind::Regularity => "regularity",
        })
    }
}

impl FromStr for TestFunctionKind {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bandlimited" => Ok(TestFunctionKind::Bandlimited),
            "heat" => Ok(TestFunctionKind::Heat),
            "cap" => Ok(TestFunctionKind::Cap),
            "regularity" => Ok(TestFunctionKind::Regularity),
            other => bail!("unknown test function '{other}' (bandlimited|heat|cap|regularity)"),
        }
    }
}

/// Spectrum selector for smoothness multipliers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Lambda,
    Mu,
}

impl SpectrumKind {
    pub fn to_core(self) -> Spectrum {
        match self {
            SpectrumKind::Lambda => Spectrum::Lambda,
            SpectrumKind::Mu => Spectrum::Mu,
        }
    }
}

impl fmt::Display for SpectrumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumKind::Lambda => "lambda",
            SpectrumKind::Mu => "mu",
        })
    }
}

impl FromStr for SpectrumKind {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(SpectrumKind::Lambda),
            "mu" => Ok(SpectrumKind::Mu),
            other => bail!("unknown spectrum '{other}' (lambda|mu)"),
        }
    }
}

/// Exponent convention for the smoothness norm: the full damping order or
/// half of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentKind {
    Full,
    Half,
}

impl ExponentKind {
    pub fn power(self, tau: f64) -> f64 {
        match self {
            ExponentKind::Full => tau,
            ExponentKind::Half => 0.5 * tau,
        }
    }
}

impl fmt::Display for ExponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExponentKind::Full => "full",
            ExponentKind::Half => "half",
        })
    }
}

impl FromStr for ExponentKind {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ExponentKind::Full),
            "half" => Ok(ExponentKind::Half),
            other => bail!("unknown smoothness exponent '{other}' (full|half)"),
        }
    }
}

/// Quadrature node count: `auto` resolves to n_max + 16 at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadNodes {
    Auto,
    Fixed(usize),
}

impl QuadNodes {
    pub fn resolve(self, n_max: usize) -> usize {
        match self {
            QuadNodes::Auto => n_max + 16,
            QuadNodes::Fixed(m) => m,
        }
    }
}

impl fmt::Display for QuadNodes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadNodes::Auto => f.write_str("auto"),
            QuadNodes::Fixed(m) => write!(f, "{m}"),
        }
    }
}

impl FromStr for QuadNodes {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            Ok(QuadNodes::Auto)
        } else {
            Ok(QuadNodes::Fixed(s.parse().context("quad_nodes")?))
        }
    }
}

/// Truncation-degree grid: `dyadic` expands to powers of two up to n_max,
/// or an explicit comma list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeGrid {
    Dyadic,
    List(Vec<usize>),
}

impl DegreeGrid {
    pub fn resolve(&self, n_max: usize) -> Vec<usize> {
        match self {
            DegreeGrid::Dyadic => fourier_laplace::maximal::MaximalConfig::dyadic_degrees(n_max),
            DegreeGrid::List(v) => v.clone(),
        }
    }
}

impl fmt::Display for DegreeGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeGrid::Dyadic => f.write_str("dyadic"),
            DegreeGrid::List(v) => {
                let parts: Vec<String> = v.iter().map(|n| n.to_string()).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl FromStr for DegreeGrid {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "dyadic" {
            return Ok(DegreeGrid::Dyadic);
        }
        let list = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().context("degree_grid entry"))
            .collect::<Result<Vec<_>>>()?;
        if list.is_empty() {
            bail!("degree_grid must be 'dyadic' or a comma list of degrees");
        }
        Ok(DegreeGrid::List(list))
    }
}

fn parse_usize_list(s: &str, key: &str) -> Result<Vec<usize>> {
    let list = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().with_context(|| key.to_string()))
        .collect::<Result<Vec<_>>>()?;
    if list.is_empty() {
        bail!("{key} must be a non-empty comma list");
    }
    Ok(list)
}

fn join_usize_list(v: &[usize]) -> String {
    v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

/// One experiment's full parameter set. Fields not used by a given
/// experiment keep their defaults and are carried through serialization
/// unchanged, so every run record is self-describing.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dim_n: u32,
    pub method: MethodKind,
    pub alpha: f64,
    pub tau: f64,
    pub n_max: usize,
    pub reference_factor: usize,
    pub test_function: TestFunctionKind,
    pub seed: u64,
    pub band_limit: usize,
    pub heat_t: f64,
    pub cap_radius: f64,
    pub smoothness: f64,
    pub angle_count: usize,
    pub quad_nodes: QuadNodes,
    pub gamma_min: f64,
    pub spectrum: SpectrumKind,
    pub liouville_exponent: ExponentKind,
    pub ensemble: usize,
    pub bandwidths: Vec<usize>,
    pub radii_count: usize,
    pub radius_min: f64,
    pub eval_count: usize,
    pub polar_nodes: usize,
    pub azimuth_nodes: usize,
    pub degree_grid: DegreeGrid,
    pub envelope: bool,
    pub tol_identity: f64,
    pub tol_normalization: f64,
    pub tol_envelope_variation: f64,
    pub tol_cauchy: f64,
    pub divergence_floor: f64,
    pub tol_converge: f64,
    pub gibbs_floor: f64,
    pub tol_away: f64,
    pub ratio_factor: f64,
    pub tol_refinement: f64,
    pub tol_quadrature: f64,
}

impl ExperimentConfig {
    /// Baseline configuration for one experiment.
    pub fn default_for(kind: ExperimentKind) -> Self {
        let mut cfg = Self {
            dim_n: 2,
            method: MethodKind::Riesz,
            alpha: 1.0,
            tau: 0.5,
            n_max: 64,
            reference_factor: 4,
            test_function: TestFunctionKind::Heat,
            seed: 20260822,
            band_limit: 32,
            heat_t: 0.05,
            cap_radius: 1.0,
            smoothness: 1.0,
            angle_count: 512,
            quad_nodes: QuadNodes::Auto,
            gamma_min: 1.0,
            spectrum: SpectrumKind::Mu,
            liouville_exponent: ExponentKind::Full,
            ensemble: 50,
            bandwidths: vec![16, 32],
            radii_count: 64,
            radius_min: 0.02,
            eval_count: 17,
            polar_nodes: 32,
            azimuth_nodes: 12,
            degree_grid: DegreeGrid::Dyadic,
            envelope: false,
            tol_identity: 1e-12,
            tol_normalization: 1e-9,
            tol_envelope_variation: 4.0,
            tol_cauchy: 0.01,
            divergence_floor: 10.0,
            tol_converge: 1e-3,
            gibbs_floor: 0.05,
            tol_away: 0.01,
            ratio_factor: 2.0,
            tol_refinement: 0.05,
            tol_quadrature: 1e-12,
        };
        match kind {
            ExperimentKind::KernelBounds => {
                // The critical order (N-1)/2 for the default sphere.
                cfg.alpha = 0.5;
                cfg.n_max = 512;
                cfg.degree_grid = DegreeGrid::List(vec![64, 128, 256, 512]);
            }
            ExperimentKind::Converge => {
                cfg.alpha = 0.6;
                cfg.n_max = 512;
                cfg.angle_count = 2048;
            }
            ExperimentKind::MaximalIneq => {
                cfg.alpha = 0.3;
                cfg.tau = 0.4;
                cfg.n_max = 32;
            }
            ExperimentKind::TnSeries => {
                cfg.alpha = 0.5;
                cfg.tau = 0.4;
                cfg.n_max = 100_000;
            }
            ExperimentKind::AbelIdentity => {
                cfg.n_max = 100;
                cfg.angle_count = 100;
            }
            ExperimentKind::DumpKernel => {
                cfg.n_max = 32;
                cfg.angle_count = 181;
            }
        }
        cfg
    }

    /// Set one field by its config key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key {
            "dim_n" => self.dim_n = v.parse().context("dim_n")?,
            "method" => self.method = v.parse()?,
            "alpha" => self.alpha = v.parse().context("alpha")?,
            "tau" => self.tau = v.parse().context("tau")?,
            "n_max" => self.n_max = v.parse().context("n_max")?,
            "reference_factor" => self.reference_factor = v.parse().context("reference_factor")?,
            "test_function" => self.test_function = v.parse()?,
            "seed" => self.seed = v.parse().context("seed")?,
            "band_limit" => self.band_limit = v.parse().context("band_limit")?,
            "heat_t" => self.heat_t = v.parse().context("heat_t")?,
            "cap_radius" => self.cap_radius = v.parse().context("cap_radius")?,
            "smoothness" => self.smoothness = v.parse().context("smoothness")?,
            "angle_count" => self.angle_count = v.parse().context("angle_count")?,
            "quad_nodes" => self.quad_nodes = v.parse()?,
            "gamma_min" => self.gamma_min = v.parse().context("gamma_min")?,
            "spectrum" => self.spectrum = v.parse()?,
            "liouville_exponent" => self.liouville_exponent = v.parse()?,
            "ensemble" => self.ensemble = v.parse().context("ensemble")?,
            "bandwidths" => self.bandwidths = parse_usize_list(v, "bandwidths")?,
            "radii_count" => self.radii_count = v.parse().context("radii_count")?,
            "radius_min" => self.radius_min = v.parse().context("radius_min")?,
            "eval_count" => self.eval_count = v.parse().context("eval_count")?,
            "polar_nodes" => self.polar_nodes = v.parse().context("polar_nodes")?,
            "azimuth_nodes" => self.azimuth_nodes = v.parse().context("azimuth_nodes")?,
            "degree_grid" => self.degree_grid = v.parse()?,
            "envelope" => self.envelope = v.parse().context("envelope")?,
            "tol_identity" => self.tol_identity = v.parse().context("tol_identity")?,
            "tol_normalization" => {
                self.tol_normalization = v.parse().context("tol_normalization")?
            }
            "tol_envelope_variation" => {
                self.tol_envelope_variation = v.parse().context("tol_envelope_variation")?
            }
            "tol_cauchy" => self.tol_cauchy = v.parse().context("tol_cauchy")?,
            "divergence_floor" => {
                self.divergence_floor = v.parse().context("divergence_floor")?
            }
            "tol_converge" => self.tol_converge = v.parse().context("tol_converge")?,
            "gibbs_floor" => self.gibbs_floor = v.parse().context("gibbs_floor")?,
            "tol_away" => self.tol_away = v.parse().context("tol_away")?,
            "ratio_factor" => self.ratio_factor = v.parse().context("ratio_factor")?,
            "tol_refinement" => self.tol_refinement = v.parse().context("tol_refinement")?,
            "tol_quadrature" => self.tol_quadrature = v.parse().context("tol_quadrature")?,
            other => bail!("unknown config key '{other}'"),
        }
        Ok(())
    }

    /// Parse file text over the defaults for `kind`.
    pub fn parse(kind: ExperimentKind, text: &str) -> Result<Self> {
        let mut cfg = Self::default_for(kind);
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    /// Apply `key=value` lines on top of the current values.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(idx) => &raw[..idx],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key=value, got '{line}'", lineno + 1))?;
            self.set(key.trim(), value)
                .with_context(|| format!("line {}", lineno + 1))?;
        }
        Ok(())
    }

    /// Render every field as `key=value` lines; [`ExperimentConfig::parse`]
    /// of the output reproduces the value exactly.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: String| {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        };
        put("dim_n", self.dim_n.to_string());
        put("method", self.method.to_string());
        put("alpha", format!("{:?}", self.alpha));
        put("tau", format!("{:?}", self.tau));
        put("n_max", self.n_max.to_string());
        put("reference_factor", self.reference_factor.to_string());
        put("test_function", self.test_function.to_string());
        put("seed", self.seed.to_string());
        put("band_limit", self.band_limit.to_string());
        put("heat_t", format!("{:?}", self.heat_t));
        put("cap_radius", format!("{:?}", self.cap_radius));
        put("smoothness", format!("{:?}", self.smoothness));
        put("angle_count", self.angle_count.to_string());
        put("quad_nodes", self.quad_nodes.to_string());
        put("gamma_min", format!("{:?}", self.gamma_min));
        put("spectrum", self.spectrum.to_string());
        put("liouville_exponent", self.liouville_exponent.to_string());
        put("ensemble", self.ensemble.to_string());
        put("bandwidths", join_usize_list(&self.bandwidths));
        put("radii_count", self.radii_count.to_string());
        put("radius_min", format!("{:?}", self.radius_min));
        put("eval_count", self.eval_count.to_string());
        put("polar_nodes", self.polar_nodes.to_string());
        put("azimuth_nodes", self.azimuth_nodes.to_string());
        put("degree_grid", self.degree_grid.to_string());
        put("envelope", self.envelope.to_string());
        put("tol_identity", format!("{:?}", self.tol_identity));
        put("tol_normalization", format!("{:?}", self.tol_normalization));
        put(
            "tol_envelope_variation",
            format!("{:?}", self.tol_envelope_variation),
        );
        put("tol_cauchy", format!("{:?}", self.tol_cauchy));
        put("divergence_floor", format!("{:?}", self.divergence_floor));
        put("tol_converge", format!("{:?}", self.tol_converge));
        put("gibbs_floor", format!("{:?}", self.gibbs_floor));
        put("tol_away", format!("{:?}", self.tol_away));
        put("ratio_factor", format!("{:?}", self.ratio_factor));
        put("tol_refinement", format!("{:?}", self.tol_refinement));
        put("tol_quadrature", format!("{:?}", self.tol_quadrature));
        s
    }

    /// Compact one-line rendering of the parameters that shape a run, for
    /// the `parameters` column of report rows. Lists are joined with `+` so
    /// the column never contains a comma.
    pub fn parameter_tag(&self, kind: ExperimentKind) -> String {
        let plus = |v: &[usize]| {
            v.iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join("+")
        };
        let mut parts = vec![format!("dim_n={}", self.dim_n)];
        match kind {
            ExperimentKind::KernelBounds => {
                parts.push(format!("alpha={:?}", self.alpha));
                parts.push(match &self.degree_grid {
                    DegreeGrid::Dyadic => "degrees=dyadic".to_string(),
                    DegreeGrid::List(v) => format!("degrees={}", plus(v)),
                });
                parts.push(format!("gamma_min={:?}", self.gamma_min));
            }
            ExperimentKind::Converge => {
                parts.push(format!("method={}", self.method));
                parts.push(format!("alpha={:?}", self.alpha));
                parts.push(format!("test_function={}", self.test_function));
                parts.push(format!("n_max={}", self.n_max));
            }
            ExperimentKind::MaximalIneq => {
                parts.push(format!("alpha={:?}", self.alpha));
                parts.push(format!("tau={:?}", self.tau));
                parts.push(format!("ensemble={}", self.ensemble));
                parts.push(format!("bandwidths={}", plus(&self.bandwidths)));
            }
            ExperimentKind::TnSeries => {
                parts.push(format!("alpha={:?}", self.alpha));
                parts.push(format!("tau={:?}", self.tau));
                parts.push(format!("n_max={}", self.n_max));
            }
            ExperimentKind::AbelIdentity => {
                parts.push(format!("n_max={}", self.n_max));
                parts.push(format!("angle_count={}", self.angle_count));
            }
            ExperimentKind::DumpKernel => {
                parts.push(format!("method={}", self.method));
                parts.push(format!("alpha={:?}", self.alpha));
                parts.push(format!("n={}", self.n_max));
            }
        }
        parts.join(";")
    }
}
