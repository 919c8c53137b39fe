//! Single-point and scan computations producing [`OutputRow`]s.

use std::collections::BTreeSet;

use rayon::prelude::*;
use xx_entropy::asymptotics::{large_block_entropy_with, small_block_entropy};
use xx_entropy::entropy::{spectral_entropy, tsallis_from_renyi};
use xx_entropy::spectrum::{block_spectrum, CorrelationSpectrum};
use xx_entropy::{EntropyKind, Error, ModelParams, QuadratureConfig, Regime, Result};

/// Columns a scan may fill; the rest are left empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutputKind {
    Exact,
    Asymptotic,
    SmallBlock,
    Residual,
}

impl OutputKind {
    pub fn all() -> BTreeSet<OutputKind> {
        [Self::Exact, Self::Asymptotic, Self::SmallBlock, Self::Residual]
            .into_iter()
            .collect()
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "exact" => Ok(Self::Exact),
            "asymptotic" => Ok(Self::Asymptotic),
            "small_block" => Ok(Self::SmallBlock),
            "residual" => Ok(Self::Residual),
            other => Err(Error::Domain(format!("unknown output column '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub lengths: Vec<usize>,
    pub fields_h: Vec<f64>,
    pub alphas: Vec<f64>,
    pub outputs: BTreeSet<OutputKind>,
    /// `None` picks von Neumann at `α = 1` and Rényi elsewhere.
    pub kind: Option<EntropyKind>,
}

impl ScanSpec {
    pub fn new(lengths: Vec<usize>, fields_h: Vec<f64>, alphas: Vec<f64>) -> Self {
        Self {
            lengths,
            fields_h,
            alphas,
            outputs: OutputKind::all(),
            kind: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lengths.is_empty() || self.fields_h.is_empty() || self.alphas.is_empty() {
            return Err(Error::Domain("scan lists must be non-empty".into()));
        }
        if self.outputs.is_empty() {
            return Err(Error::Domain("at least one output column is required".into()));
        }
        if let Some(&l) = self.lengths.iter().find(|&&l| l == 0) {
            return Err(Error::Domain(format!("block length must be positive, got {l}")));
        }
        if let Some(h) = self.fields_h.iter().find(|h| !(h.abs() < 2.0)) {
            return Err(Error::Domain(format!("scan fields must lie in (-2, 2), got {h}")));
        }
        if let Some(a) = self.alphas.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
            return Err(Error::Domain(format!("alpha must be positive, got {a}")));
        }
        for &alpha in &self.alphas {
            resolve_kind(self.kind, alpha)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputRow {
    pub length: usize,
    pub h: f64,
    pub alpha: f64,
    pub scaled_length: f64,
    pub s_exact: Option<f64>,
    pub s_asymptotic: Option<f64>,
    pub s_small_block: Option<f64>,
    pub residual: Option<f64>,
    /// `largeL`, `smallL`, `critical_boundary` or `error`.
    pub regime: String,
    pub error: Option<String>,
}

pub const CRITICAL_REGIME: &str = "critical_boundary";
pub const ERROR_REGIME: &str = "error";

fn resolve_kind(kind: Option<EntropyKind>, alpha: f64) -> Result<EntropyKind> {
    match kind {
        None if alpha == 1.0 => Ok(EntropyKind::VonNeumann),
        None => Ok(EntropyKind::Renyi),
        Some(EntropyKind::VonNeumann) if alpha != 1.0 => Err(Error::Domain(format!(
            "von Neumann entropy takes alpha = 1, got {alpha}"
        ))),
        Some(k) => Ok(k),
    }
}

/// Rényi prediction converted to the requested kind.
fn as_kind(kind: EntropyKind, renyi: f64, alpha: f64) -> f64 {
    match kind {
        EntropyKind::Tsallis => tsallis_from_renyi(renyi, alpha),
        _ => renyi,
    }
}

fn row_from_spectrum(
    params: &ModelParams,
    spectrum: Option<&CorrelationSpectrum>,
    alpha: f64,
    kind: EntropyKind,
    outputs: &BTreeSet<OutputKind>,
    config: &QuadratureConfig,
) -> Result<OutputRow> {
    let scaled = params.scaled_length();
    let mut row = OutputRow {
        length: params.length(),
        h: params.field(),
        alpha,
        scaled_length: scaled,
        s_exact: None,
        s_asymptotic: None,
        s_small_block: None,
        residual: None,
        regime: String::new(),
        error: None,
    };
    let Some(spectrum) = spectrum else {
        // Product state: every entropy vanishes and no law applies.
        row.regime = CRITICAL_REGIME.into();
        if outputs.contains(&OutputKind::Exact) {
            row.s_exact = Some(0.0);
        }
        return Ok(row);
    };
    let exact = spectral_entropy(spectrum, alpha, kind)?.value;
    let large = as_kind(kind, large_block_entropy_with(params, alpha, config)?.value, alpha);
    let small = if scaled < 1.0 {
        Some(as_kind(kind, small_block_entropy(params, alpha)?.value, alpha))
    } else {
        None
    };
    let (regime, chosen) = match small {
        Some(s) => (Regime::SmallL, s),
        None => (Regime::LargeL, large),
    };
    row.regime = regime.as_str().into();
    let want = |k| outputs.contains(&k);
    if want(OutputKind::Exact) {
        row.s_exact = Some(exact);
    }
    if want(OutputKind::Asymptotic) {
        row.s_asymptotic = Some(large);
    }
    if want(OutputKind::SmallBlock) {
        row.s_small_block = small;
    }
    if want(OutputKind::Residual) {
        row.residual = Some(exact - chosen);
    }
    Ok(row)
}

fn spectrum_for(params: &ModelParams) -> Result<Option<CorrelationSpectrum>> {
    if params.at_critical_boundary() {
        Ok(None)
    } else {
        block_spectrum(params).map(Some)
    }
}

/// One row: exact entropy and the prediction of the applicable regime.
pub fn run_compute(
    params: &ModelParams,
    alpha: f64,
    kind: Option<EntropyKind>,
    config: &QuadratureConfig,
) -> Result<OutputRow> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
    }
    let kind = resolve_kind(kind, alpha)?;
    let spectrum = spectrum_for(params)?;
    row_from_spectrum(params, spectrum.as_ref(), alpha, kind, &OutputKind::all(), config)
}

fn error_row(length: usize, h: f64, alpha: f64, err: &Error) -> OutputRow {
    OutputRow {
        length,
        h,
        alpha,
        scaled_length: f64::NAN,
        s_exact: None,
        s_asymptotic: None,
        s_small_block: None,
        residual: None,
        regime: ERROR_REGIME.into(),
        error: Some(format!("{}: {err}", err.kind())),
    }
}

/// Rows for `lengths × fields_h × alphas` in that nesting order. Points are
/// computed in parallel, one spectrum per `(L, h)`; failures become error
/// rows and the scan goes on.
pub fn run_scan(spec: &ScanSpec, config: &QuadratureConfig) -> Result<Vec<OutputRow>> {
    spec.validate()?;
    let points: Vec<(usize, f64)> = spec
        .lengths
        .iter()
        .flat_map(|&l| spec.fields_h.iter().map(move |&h| (l, h)))
        .collect();
    let blocks: Vec<Vec<OutputRow>> = points
        .par_iter()
        .map(|&(l, h)| {
            let prepared = ModelParams::new(h, l).and_then(|p| Ok((p, spectrum_for(&p)?)));
            spec.alphas
                .iter()
                .map(|&alpha| {
                    let row = prepared.as_ref().map_err(Clone::clone).and_then(|(p, s)| {
                        let kind = resolve_kind(spec.kind, alpha)?;
                        row_from_spectrum(p, s.as_ref(), alpha, kind, &spec.outputs, config)
                    });
                    row.unwrap_or_else(|e| error_row(l, h, alpha, &e))
                })
                .collect()
        })
        .collect();
    Ok(blocks.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn single_site_at_zero_field() {
        let row = run_compute(&ModelParams::new(0.0, 1).unwrap(), 1.0, None, &cfg()).unwrap();
        assert!((row.s_exact.unwrap() - LN_2).abs() < 1e-14);
        assert_eq!(row.regime, "largeL");
    }

    #[test]
    fn small_block_regime_near_saturation() {
        let row = run_compute(&ModelParams::new(1.99, 1).unwrap(), 1.0, None, &cfg()).unwrap();
        assert_eq!(row.regime, "smallL");
        let small = row.s_small_block.unwrap();
        assert!((small - row.s_exact.unwrap()).abs() < 0.1 * small);
        assert_eq!(row.residual.unwrap(), row.s_exact.unwrap() - small);
    }

    #[test]
    fn critical_boundary_row() {
        let row = run_compute(&ModelParams::new(-2.0, 7).unwrap(), 1.0, None, &cfg()).unwrap();
        assert_eq!(row.regime, CRITICAL_REGIME);
        assert_eq!(row.s_exact, Some(0.0));
        assert!(row.s_asymptotic.is_none() && row.residual.is_none());
    }

    #[test]
    fn kind_resolution() {
        assert_eq!(resolve_kind(None, 1.0).unwrap(), EntropyKind::VonNeumann);
        assert_eq!(resolve_kind(None, 2.0).unwrap(), EntropyKind::Renyi);
        assert!(resolve_kind(Some(EntropyKind::VonNeumann), 2.0).is_err());
        assert_eq!(
            resolve_kind(Some(EntropyKind::Tsallis), 2.0).unwrap(),
            EntropyKind::Tsallis
        );
    }

    #[test]
    fn scan_order_is_lexicographic() {
        let spec = ScanSpec::new(vec![3, 1], vec![0.5, 0.0], vec![2.0, 1.0]);
        let rows = run_scan(&spec, &cfg()).unwrap();
        let keys: Vec<(usize, f64, f64)> = rows.iter().map(|r| (r.length, r.h, r.alpha)).collect();
        let expected = vec![
            (3, 0.5, 2.0),
            (3, 0.5, 1.0),
            (3, 0.0, 2.0),
            (3, 0.0, 1.0),
            (1, 0.5, 2.0),
            (1, 0.5, 1.0),
            (1, 0.0, 2.0),
            (1, 0.0, 1.0),
        ];
        assert_eq!(keys, expected);
    }

    #[test]
    fn scan_rejects_bad_specs() {
        assert!(run_scan(&ScanSpec::new(vec![], vec![0.0], vec![1.0]), &cfg()).is_err());
        assert!(run_scan(&ScanSpec::new(vec![1], vec![2.0], vec![1.0]), &cfg()).is_err());
        assert!(run_scan(&ScanSpec::new(vec![1], vec![0.0], vec![-1.0]), &cfg()).is_err());
        assert!(run_scan(&ScanSpec::new(vec![0], vec![0.0], vec![1.0]), &cfg()).is_err());
    }

    #[test]
    fn oversized_block_becomes_error_row() {
        let spec = ScanSpec::new(vec![2, 30_000], vec![0.0], vec![1.0]);
        let rows = run_scan(&spec, &cfg()).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].error.is_none());
        assert_eq!(rows[1].regime, ERROR_REGIME);
        assert!(rows[1].error.as_deref().unwrap().starts_with("size"));
    }

    #[test]
    fn outputs_select_columns() {
        let mut spec = ScanSpec::new(vec![20], vec![0.0], vec![1.0]);
        spec.outputs = [OutputKind::Exact].into_iter().collect();
        let row = &run_scan(&spec, &cfg()).unwrap()[0];
        assert!(row.s_exact.is_some());
        assert!(row.s_asymptotic.is_none() && row.residual.is_none());
    }

    #[test]
    fn tsallis_prediction_follows_renyi() {
        let p = ModelParams::new(0.0, 50).unwrap();
        let renyi = run_compute(&p, 2.0, None, &cfg()).unwrap();
        let tsallis = run_compute(&p, 2.0, Some(EntropyKind::Tsallis), &cfg()).unwrap();
        let expected = tsallis_from_renyi(renyi.s_asymptotic.unwrap(), 2.0);
        assert_eq!(tsallis.s_asymptotic.unwrap(), expected);
        let exact = tsallis_from_renyi(renyi.s_exact.unwrap(), 2.0);
        assert!((tsallis.s_exact.unwrap() - exact).abs() < 1e-12);
    }
}
