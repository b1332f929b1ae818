use euler_census::integral::RunReport;
use serde::Serialize;

/// One graph's estimates side by side.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonRecord {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub lambda2: f64,
    pub gamma_observed: f64,
    pub ln_ec_formula: f64,
    pub ln_ec_exact: Option<f64>,
    pub ln_ec_mc: Option<f64>,
    pub ln_ec_quadrature: Option<f64>,
    /// `exp(ln_ec_exact − ln_ec_formula) − 1`.
    pub delta: Option<f64>,
    /// `|delta| · n^{1/2−ε}`.
    pub delta_scaled: Option<f64>,
    pub notes: Vec<String>,
    pub runs: Vec<RunReport>,
}

impl ComparisonRecord {
    pub fn set_exact(&mut self, ln_exact: f64, epsilon: f64) {
        let delta = (ln_exact - self.ln_ec_formula).exp() - 1.0;
        self.ln_ec_exact = Some(ln_exact);
        self.delta = Some(delta);
        self.delta_scaled = Some(delta.abs() * (self.n as f64).powf(0.5 - epsilon));
    }
}

pub const CSV_HEADER: [&str; 12] = [
    "graph_id",
    "n",
    "m",
    "lambda2",
    "gamma_observed",
    "ln_ec_formula",
    "ln_ec_exact",
    "ln_ec_mc",
    "ln_ec_quadrature",
    "delta",
    "delta_scaled",
    "error",
];

/// Flat CSV row; every column but the id is empty when the instance failed
/// before reaching it.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepRow {
    pub graph_id: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub lambda2: Option<f64>,
    pub gamma_observed: Option<f64>,
    pub ln_ec_formula: Option<f64>,
    pub ln_ec_exact: Option<f64>,
    pub ln_ec_mc: Option<f64>,
    pub ln_ec_quadrature: Option<f64>,
    pub delta: Option<f64>,
    pub delta_scaled: Option<f64>,
    pub error: Option<String>,
}

impl From<&ComparisonRecord> for SweepRow {
    fn from(r: &ComparisonRecord) -> Self {
        SweepRow {
            graph_id: r.graph_id.clone(),
            n: Some(r.n),
            m: Some(r.m),
            lambda2: Some(r.lambda2),
            gamma_observed: Some(r.gamma_observed),
            ln_ec_formula: Some(r.ln_ec_formula),
            ln_ec_exact: r.ln_ec_exact,
            ln_ec_mc: r.ln_ec_mc,
            ln_ec_quadrature: r.ln_ec_quadrature,
            delta: r.delta,
            delta_scaled: r.delta_scaled,
            error: (!r.notes.is_empty()).then(|| r.notes.join("; ")),
        }
    }
}
