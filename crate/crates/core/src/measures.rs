//! Finite positive measures on `[0, 1)`.
//!
//! Positions are stored through `δ = 1 − t` (as a [`LogValue`]) so that atoms
//! at `1 − 10^{−200}` keep their full precision; `ln t` is carried as
//! `ln(−ln t)` for the same reason.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Result};
use crate::logvalue::{LogSum, LogValue};
use crate::quadrature::{self, GaussLegendre};

/// Relative tolerance for dyadic-panel quadrature.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// A point `t = 1 − δ` with a positive weight.
#[derive(Clone, Copy, Debug)]
pub struct Node {
    /// `δ = 1 − t`.
    pub delta: LogValue,
    /// `−ln t`; zero only at `t = 1`, which never occurs.
    pub neg_ln_t: LogValue,
    pub weight: LogValue,
}

impl Node {
    pub fn from_delta(delta: LogValue, weight: LogValue) -> Self {
        Node {
            delta,
            neg_ln_t: neg_ln_one_minus(delta),
            weight,
        }
    }

    /// `t^a` for `a ≥ 0`.
    pub fn power(&self, a: f64) -> LogValue {
        if a == 0.0 {
            return LogValue::ONE;
        }
        if self.neg_ln_t.is_zero() {
            return LogValue::ONE;
        }
        // a·(−ln t) may itself be astronomically large
        let exponent = LogValue::from_f64(a) * self.neg_ln_t;
        let ln = exponent.ln();
        if ln > 709.0 {
            LogValue::ZERO
        } else {
            LogValue::from_ln(-ln.exp())
        }
    }

    /// Position `t` as a plain float (rounds to 1 for tiny `δ`).
    pub fn t(&self) -> f64 {
        1.0 - self.delta.to_f64()
    }
}

/// `−ln(1 − δ)` for `δ ∈ (0, 1]`, accurate for tiny `δ`.
pub fn neg_ln_one_minus(delta: LogValue) -> LogValue {
    let ld = delta.ln();
    if delta.is_zero() {
        LogValue::ZERO
    } else if ld < -30.0 {
        // −ln(1−δ) = δ (1 + δ/2 + …)
        LogValue::from_ln(ld).add(LogValue::from_ln(2.0 * ld - std::f64::consts::LN_2))
    } else {
        let d = ld.exp();
        if d >= 1.0 {
            LogValue::from_ln(f64::INFINITY)
        } else {
            LogValue::from_f64(-(-d).ln_1p())
        }
    }
}

/// A point mass `mass · δ_{1−delta}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Atom {
    pub delta: LogValue,
    pub mass: LogValue,
}

impl Atom {
    /// Atom at `x = 1 − delta` with plain-float inputs.
    pub fn new(delta: f64, mass: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return invalid(format!("atom delta must lie in (0, 1], got {delta}"));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return invalid(format!("atom mass must be positive, got {mass}"));
        }
        Ok(Atom {
            delta: LogValue::from_f64(delta),
            mass: LogValue::from_f64(mass),
        })
    }

    /// Atom at `x` (only for positions not too close to 1).
    pub fn at(x: f64, mass: f64) -> Result<Self> {
        Atom::new(1.0 - x, mass)
    }

    pub fn from_logs(ln_delta: f64, ln_mass: f64) -> Result<Self> {
        if !(ln_delta <= 0.0) || !ln_mass.is_finite() {
            return invalid(format!(
                "atom needs ln(delta) <= 0 and finite ln(mass), got ({ln_delta}, {ln_mass})"
            ));
        }
        Ok(Atom {
            delta: LogValue::from_ln(ln_delta),
            mass: LogValue::from_ln(ln_mass),
        })
    }

    pub fn node(&self) -> Node {
        Node::from_delta(self.delta, self.mass)
    }
}

/// Built-in densities, evaluated in the endpoint coordinate.
#[derive(Clone)]
pub enum Density {
    /// `t^a (1 − t)^b`, `a, b > −1`.
    Jacobi { a: f64, b: f64 },
    /// Arbitrary nonnegative integrable function of `(t, δ)`.
    Custom {
        name: String,
        f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    },
}

impl Density {
    pub fn jacobi(a: f64, b: f64) -> Result<Self> {
        if !(a > -1.0 && b > -1.0) {
            return invalid(format!("Jacobi density needs a, b > -1, got ({a}, {b})"));
        }
        Ok(Density::Jacobi { a, b })
    }

    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Density::Custom {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    fn eval(&self, t: f64, delta: LogValue) -> LogValue {
        match self {
            Density::Jacobi { a, b } => {
                // Gauss nodes never sit at t = 0
                let ln_t = if t > 0.5 {
                    -neg_ln_one_minus(delta).to_f64()
                } else {
                    t.ln()
                };
                LogValue::from_ln(a * ln_t) * delta.powf(*b)
            }
            Density::Custom { f, .. } => {
                let v = f(t, delta.to_f64());
                LogValue::from_f64(v.max(0.0))
            }
        }
    }
}

impl fmt::Debug for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Density::Jacobi { a, b } => write!(f, "Jacobi(a={a}, b={b})"),
            Density::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

#[derive(Clone, Debug)]
enum Base {
    Lebesgue,
    Atoms(Vec<Atom>),
    Density(Density),
}

/// Half-open window `t ∈ [a, b)`, stored as `δ ∈ (lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Window {
    delta_lo: f64,
    delta_hi: f64,
}

impl Window {
    const FULL: Window = Window {
        delta_lo: 0.0,
        delta_hi: 1.0,
    };

    fn contains(&self, delta: LogValue) -> bool {
        let d = delta.to_f64();
        d > self.delta_lo && d <= self.delta_hi
    }

    fn intersect(&self, other: &Window) -> Window {
        Window {
            delta_lo: self.delta_lo.max(other.delta_lo),
            delta_hi: self.delta_hi.min(other.delta_hi),
        }
    }

    fn is_full(&self) -> bool {
        *self == Window::FULL
    }
}

/// A finite positive measure on `[0, 1)`: Lebesgue, atomic or a density,
/// optionally scaled and restricted to a subinterval.
#[derive(Clone, Debug)]
pub struct Measure {
    base: Base,
    window: Window,
    factor: f64,
}

/// Outcome of an integral that may be truncated or divergent.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Integral {
    pub value: LogValue,
    /// The panel walk hit its maximal depth before converging.
    pub capped: bool,
}

impl Measure {
    pub fn lebesgue() -> Self {
        Measure {
            base: Base::Lebesgue,
            window: Window::FULL,
            factor: 1.0,
        }
    }

    /// Atomic measure; atoms are sorted by ascending position.
    pub fn atoms(mut atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return invalid("atomic measure needs at least one atom");
        }
        atoms.sort_by(|a, b| b.delta.ln().total_cmp(&a.delta.ln()));
        if let Some(w) = atoms.windows(2).find(|w| w[0].delta == w[1].delta) {
            return invalid(format!("duplicate atom position delta = {:?}", w[0].delta));
        }
        Ok(Measure {
            base: Base::Atoms(atoms),
            window: Window::FULL,
            factor: 1.0,
        })
    }

    /// Atoms from `(x, mass)` pairs.
    pub fn atoms_at(points: &[(f64, f64)]) -> Result<Self> {
        Measure::atoms(
            points
                .iter()
                .map(|&(x, c)| Atom::at(x, c))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn density(density: Density) -> Self {
        Measure {
            base: Base::Density(density),
            window: Window::FULL,
            factor: 1.0,
        }
    }

    /// `c · μ`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return invalid(format!("scale factor must be positive, got {c}"));
        }
        let mut out = self.clone();
        match &mut out.base {
            Base::Atoms(atoms) => {
                for a in atoms {
                    a.mass = a.mass * LogValue::from_f64(c);
                }
            }
            _ => out.factor *= c,
        }
        Ok(out)
    }

    /// `μ|_{[a,b)}` for `0 ≤ a < b ≤ 1`.
    pub fn restrict(&self, a: f64, b: f64) -> Result<Self> {
        if !(0.0 <= a && a < b && b <= 1.0) {
            return invalid(format!("restriction needs 0 <= a < b <= 1, got [{a}, {b})"));
        }
        Ok(self.restrict_delta(1.0 - b, 1.0 - a))
    }

    /// Restriction to `δ ∈ (delta_lo, delta_hi]`, i.e. `t ∈ [1−delta_hi, 1−delta_lo)`.
    pub fn restrict_delta(&self, delta_lo: f64, delta_hi: f64) -> Self {
        let window = self.window.intersect(&Window { delta_lo, delta_hi });
        let base = match &self.base {
            Base::Atoms(atoms) => Base::Atoms(
                atoms
                    .iter()
                    .copied()
                    .filter(|a| window.contains(a.delta))
                    .collect(),
            ),
            other => other.clone(),
        };
        Measure {
            base,
            window,
            factor: self.factor,
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self.base, Base::Atoms(_))
    }

    pub fn is_lebesgue(&self) -> bool {
        matches!(self.base, Base::Lebesgue)
    }

    pub fn atom_list(&self) -> Option<&[Atom]> {
        match &self.base {
            Base::Atoms(a) => Some(a),
            _ => None,
        }
    }

    /// True for restrictions that removed everything.
    pub fn is_empty(&self) -> bool {
        match &self.base {
            Base::Atoms(a) => a.is_empty(),
            _ => self.window.delta_hi <= self.window.delta_lo,
        }
    }

    pub fn is_restricted(&self) -> bool {
        !self.window.is_full()
    }

    /// Unscaled, unrestricted Lebesgue measure.
    pub fn is_standard_lebesgue(&self) -> bool {
        self.is_lebesgue() && self.window.is_full() && self.factor == 1.0
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        let base = match &self.base {
            Base::Lebesgue => "lebesgue".to_string(),
            Base::Atoms(a) => format!("atoms({})", a.len()),
            Base::Density(d) => format!("density {d:?}"),
        };
        let mut s = if self.factor != 1.0 {
            format!("{} * {base}", self.factor)
        } else {
            base
        };
        if !self.window.is_full() {
            s.push_str(&format!(
                " restricted to delta in ({:e}, {:e}]",
                self.window.delta_lo, self.window.delta_hi
            ));
        }
        s
    }

    pub fn total_mass(&self) -> f64 {
        self.moment(0.0).expect("a = 0 is valid").to_f64()
    }

    /// `∫ t^a dμ`.
    pub fn moment(&self, a: f64) -> Result<LogValue> {
        if !(a >= 0.0) {
            return invalid(format!("moment order must be >= 0, got {a}"));
        }
        let factor = LogValue::from_f64(self.factor);
        let value = match &self.base {
            Base::Lebesgue => lebesgue_window_moment(self.window, a),
            Base::Atoms(atoms) => atoms
                .iter()
                .map(|at| at.mass * at.node().power(a))
                .collect::<LogSum>()
                .value(),
            Base::Density(Density::Jacobi { a: ja, b: jb }) if self.window.is_full() => {
                LogValue::from_ln(ln_beta(a + ja + 1.0, jb + 1.0))
            }
            Base::Density(_) => {
                self.integrate(a, DEFAULT_REL_TOL, |node| node.power(a))
                    .value
            }
        };
        Ok(value * factor)
    }

    /// `∫ f dμ` for a nonnegative integrand given at nodes.
    ///
    /// `exponent_hint` is the largest `λ` for which the integrand still
    /// behaves like `t^λ`; it sets the minimal refinement depth at `t = 1`.
    /// Atomic measures are summed exactly in ascending position.
    pub fn integrate(
        &self,
        exponent_hint: f64,
        rel_tol: f64,
        f: impl Fn(&Node) -> LogValue,
    ) -> Integral {
        let factor = LogValue::from_f64(self.factor);
        if let Base::Atoms(atoms) = &self.base {
            let value = atoms
                .iter()
                .map(|at| at.mass * f(&at.node()))
                .collect::<LogSum>()
                .value();
            return Integral {
                value: value * factor,
                capped: false,
            };
        }
        let mut total = LogSum::new();
        let rule = GaussLegendre::default_rule();
        let min_depth = quadrature::peak_depth(exponent_hint);
        for_each_panel_sum(self, rule, |j, nodes| {
            let mut part = LogSum::new();
            for node in nodes {
                part.add(node.weight * f(node));
            }
            let part = part.value();
            total.add(part);
            j >= min_depth && part.ln() <= rel_tol.ln() + total.value().ln()
        })
        .map(|capped| Integral {
            value: total.value() * factor,
            capped,
        })
        .unwrap_or(Integral {
            value: total.value() * factor,
            capped: false,
        })
    }

    /// Quadrature nodes for a continuous measure down to the given depth.
    /// Atomic measures return their atoms.
    pub fn nodes(&self, max_depth: usize) -> Vec<Node> {
        let factor = LogValue::from_f64(self.factor);
        if let Base::Atoms(atoms) = &self.base {
            return atoms.iter().map(|a| a.node()).collect();
        }
        let mut out = Vec::new();
        for_each_panel_sum(self, GaussLegendre::default_rule(), |j, nodes| {
            out.extend(nodes.iter().map(|n| Node {
                weight: n.weight * factor,
                ..*n
            }));
            j >= max_depth
        });
        out
    }

    /// `μ([1−ε, 1))`.
    pub fn mass_near_one(&self, eps: f64) -> f64 {
        self.restrict_delta(0.0, eps).total_mass()
    }

    /// `∫ dμ/(1−t)`.
    pub fn poisson_integral(&self) -> PoissonIntegral {
        let factor = self.factor;
        match &self.base {
            Base::Atoms(atoms) => PoissonIntegral {
                value: Some(
                    atoms
                        .iter()
                        .map(|a| a.mass / a.delta)
                        .collect::<LogSum>()
                        .value(),
                ),
                divergent: false,
                heuristic: false,
            },
            Base::Lebesgue => {
                if self.window.delta_lo > 0.0 {
                    let w = self.window;
                    let v = (w.delta_hi / w.delta_lo).ln() * factor;
                    PoissonIntegral::exact(LogValue::from_f64(v.max(0.0)))
                } else {
                    PoissonIntegral::divergent(false)
                }
            }
            Base::Density(Density::Jacobi { a, b }) if self.window.is_full() => {
                if *b > 0.0 {
                    PoissonIntegral::exact(LogValue::from_ln(ln_beta(a + 1.0, *b) + factor.ln()))
                } else {
                    PoissonIntegral::divergent(false)
                }
            }
            Base::Density(_) => self.poisson_by_panels(),
        }
    }

    fn poisson_by_panels(&self) -> PoissonIntegral {
        let factor = LogValue::from_f64(self.factor);
        let mut total = LogSum::new();
        let mut parts: Vec<f64> = Vec::new();
        let rule = GaussLegendre::default_rule();
        let mut divergent = false;
        let capped = for_each_panel_sum(self, rule, |j, nodes| {
            let part: LogSum = nodes.iter().map(|n| n.weight / n.delta).collect();
            let part = part.value();
            total.add(part);
            parts.push(part.ln());
            if j >= 16 {
                let tail = &parts[parts.len() - 8..];
                // panel sums not shrinking geometrically: log-divergent or worse
                if tail
                    .windows(2)
                    .all(|w| w[1] - w[0] > -0.05 * std::f64::consts::LN_2)
                {
                    divergent = true;
                    return true;
                }
            }
            j >= 20 && part.ln() <= DEFAULT_REL_TOL.ln() + total.value().ln()
        });
        if divergent || capped == Some(true) {
            PoissonIntegral::divergent(true)
        } else {
            PoissonIntegral {
                value: Some(total.value() * factor),
                divergent: false,
                heuristic: true,
            }
        }
    }
}

/// `ln B(x, y)`, accurate when `x` is huge and `y` moderate.
pub fn ln_beta(x: f64, y: f64) -> f64 {
    let (big, small) = if x >= y { (x, y) } else { (y, x) };
    if big < 50.0 {
        return ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y);
    }
    ln_gamma(small) + ln_gamma_ratio(big, small)
}

/// `ln Γ(x) − ln Γ(x + y)` for `x ≥ 50` by the difference of Stirling series.
fn ln_gamma_ratio(x: f64, y: f64) -> f64 {
    fn tail(z: f64) -> f64 {
        let z2 = z * z;
        (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * z2)) / z2) / z2) / z
    }
    let l = (y / x).ln_1p();
    // (x−½) ln x − x − (x+y−½) ln(x+y) + (x+y), with ln(x+y) = ln x + l
    let main = -y * x.ln() - ((x * l - y) + (y - 0.5) * l);
    main + tail(x) - tail(x + y)
}

/// `∫_{window} t^a dt`, exact.
fn lebesgue_window_moment(w: Window, a: f64) -> LogValue {
    if w.delta_hi <= w.delta_lo {
        return LogValue::ZERO;
    }
    // ∫_{1−hi}^{1−lo} t^a dt = ((1−lo)^{a+1} − (1−hi)^{a+1}) / (a+1)
    let s = a + 1.0;
    let upper = Node::from_delta(LogValue::from_f64(w.delta_lo), LogValue::ONE).power(s);
    let upper = if w.delta_lo == 0.0 {
        LogValue::ONE
    } else {
        upper
    };
    if w.delta_hi >= 1.0 {
        return upper / LogValue::from_f64(s);
    }
    let lower = Node::from_delta(LogValue::from_f64(w.delta_hi), LogValue::ONE).power(s);
    // upper − lower = upper · (−expm1(ln lower − ln upper))
    let gap = lower.ln() - upper.ln();
    let diff = LogValue::from_ln(upper.ln() + (-gap.exp_m1()).ln());
    diff / LogValue::from_f64(s)
}

/// Walks panels of a continuous measure, calling `visit(depth, nodes)`
/// until it returns `true`. Returns `Some(true)` when the walk ran out of
/// depth, `Some(false)` on an early stop, `None` when the window is empty.
fn for_each_panel_sum(
    mu: &Measure,
    rule: &GaussLegendre,
    mut visit: impl FnMut(usize, &[Node]) -> bool,
) -> Option<bool> {
    let w = mu.window;
    if w.delta_hi <= w.delta_lo {
        return None;
    }
    let weight_of = |t: f64, delta: LogValue, gw: f64| -> LogValue {
        let dens = match &mu.base {
            Base::Lebesgue => LogValue::ONE,
            Base::Density(d) => d.eval(t, delta),
            Base::Atoms(_) => unreachable!("atomic measures have no panels"),
        };
        dens * LogValue::from_f64(gw)
    };
    // t ∈ [0, 1/2): dyadic toward t = 0 for endpoint singularities there
    if w.delta_hi > 0.5 {
        let mut nodes = Vec::new();
        let t_hi = (1.0 - w.delta_lo).min(0.5);
        let t_lo = 1.0 - w.delta_hi;
        let mut edges = vec![0.0];
        for i in (1..=40).rev() {
            edges.push(0.5f64.powi(i));
        }
        for pair in edges.windows(2) {
            let (a, b) = (pair[0].max(t_lo), pair[1].min(t_hi));
            if b > a {
                for (t, gw) in rule.mapped(a, b) {
                    let delta = LogValue::from_f64(1.0 - t);
                    nodes.push(Node {
                        delta,
                        neg_ln_t: LogValue::from_f64(-t.ln()),
                        weight: weight_of(t, delta, gw),
                    });
                }
            }
        }
        if visit(0, &nodes) {
            return Some(false);
        }
    }
    for j in 1..=quadrature::MAX_DEPTH {
        let hi = 0.5f64.powi(j as i32);
        if hi <= w.delta_lo {
            return Some(false);
        }
        let Some(panel) = quadrature::dyadic_panel(j, w.delta_lo, w.delta_hi) else {
            continue;
        };
        let nodes: Vec<Node> = rule
            .mapped(panel.delta_lo, panel.delta_hi)
            .map(|(d, gw)| {
                let delta = LogValue::from_f64(d);
                let node = Node::from_delta(delta, LogValue::ONE);
                Node {
                    weight: weight_of(1.0 - d, delta, gw),
                    ..node
                }
            })
            .collect();
        if visit(j, &nodes) {
            return Some(false);
        }
    }
    Some(true)
}

/// Value of `∫ dμ/(1−t)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PoissonIntegral {
    /// `None` when divergent.
    pub value: Option<LogValue>,
    pub divergent: bool,
    /// Set when the answer (either way) came from the panel heuristic.
    pub heuristic: bool,
}

impl PoissonIntegral {
    fn exact(v: LogValue) -> Self {
        PoissonIntegral {
            value: Some(v),
            divergent: false,
            heuristic: false,
        }
    }

    fn divergent(heuristic: bool) -> Self {
        PoissonIntegral {
            value: None,
            divergent: true,
            heuristic,
        }
    }

    pub fn finite_value(&self) -> Option<f64> {
        self.value.map(|v| v.to_f64())
    }
}

/// Geometric grid `ε_i = eps_max / factor^i ≥ eps_min`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EpsGrid {
    pub eps_min: f64,
    pub eps_max: f64,
    pub factor: f64,
}

impl Default for EpsGrid {
    fn default() -> Self {
        EpsGrid {
            eps_min: 1e-12,
            eps_max: 1.0,
            factor: 2.0,
        }
    }
}

impl EpsGrid {
    pub fn points(&self) -> Result<Vec<f64>> {
        if !(self.eps_min > 0.0
            && self.eps_min <= self.eps_max
            && self.eps_max <= 1.0
            && self.factor > 1.0)
        {
            return invalid(format!("bad epsilon grid {self:?}"));
        }
        let mut out = Vec::new();
        let mut e = self.eps_max;
        while e >= self.eps_min {
            out.push(e);
            e /= self.factor;
        }
        Ok(out)
    }
}

/// Sublinearity profile `ε ↦ μ([1−ε,1))/ε` for `ε ∈ [eps_min, eps_max]`.
#[derive(Clone, Debug, Serialize)]
pub struct SublinearReport {
    /// `‖μ‖_S` (exact for atoms; a grid lower bound otherwise).
    pub norm_s: f64,
    pub attaining_epsilon: f64,
    pub vanishing_profile: Vec<(f64, f64)>,
    /// True when `norm_s` is only the grid maximum.
    pub grid_lower_bound: bool,
}

/// Sublinear constant of `μ`.
pub fn sublinear_norm(mu: &Measure, grid: &EpsGrid) -> Result<SublinearReport> {
    let points = grid.points()?;
    let profile: Vec<(f64, f64)> = points
        .iter()
        .map(|&e| (e, mu.mass_near_one(e) / e))
        .collect();
    let (mut best_eps, mut best) = profile.iter().copied().fold(
        (grid.eps_max, 0.0),
        |acc, (e, r)| if r > acc.1 { (e, r) } else { acc },
    );
    let mut grid_lower_bound = true;
    if let Some(atoms) = mu.atom_list() {
        grid_lower_bound = false;
        // on [eps_min, eps_max] the sup is attained at ε = eps_min or at a
        // breakpoint ε = δ_k: mass of atoms at or beyond x_k over δ_k
        let mut tail = LogSum::new();
        let lo = LogValue::from_f64(grid.eps_min);
        let hi = LogValue::from_f64(grid.eps_max);
        for atom in atoms.iter().rev() {
            if atom.delta > hi {
                break;
            }
            tail.add(atom.mass);
            if atom.delta < lo {
                continue;
            }
            let ratio = (tail.value() / atom.delta).to_f64();
            if ratio > best {
                best = ratio;
                best_eps = atom.delta.to_f64();
            }
        }
        let left = mu.mass_near_one(grid.eps_min) / grid.eps_min;
        if left > best {
            best = left;
            best_eps = grid.eps_min;
        }
    }
    Ok(SublinearReport {
        norm_s: best,
        attaining_epsilon: best_eps,
        vanishing_profile: profile,
        grid_lower_bound,
    })
}

/// `∫ dμ/(1−t)` (free-function form).
pub fn poisson_integral(mu: &Measure) -> PoissonIntegral {
    mu.poisson_integral()
}

/// `∫ t^a dμ` (free-function form).
pub fn moment(mu: &Measure, a: f64) -> Result<LogValue> {
    mu.moment(a)
}

/// Atoms `x_k = 1 − 2^{−k}`, `c_k = mass(k)`, `k = 1..=count`.
pub fn dyadic_atoms(count: usize, mass: impl Fn(usize) -> f64) -> Result<Measure> {
    Measure::atoms(
        (1..=count)
            .map(|k| Atom::from_logs(-(k as f64) * std::f64::consts::LN_2, mass(k).ln()))
            .collect::<Result<Vec<_>>>()?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn moment_examples() {
        assert!(close(
            Measure::lebesgue().moment(3.0).unwrap().to_f64(),
            0.25,
            1e-15
        ));
        let half = Measure::atoms_at(&[(0.5, 1.0)]).unwrap();
        assert!(close(
            half.moment(10.0).unwrap().to_f64(),
            9.765625e-4,
            1e-14
        ));
        let geo = dyadic_atoms(30, |k| 4f64.powi(-(k as i32))).unwrap();
        assert!((geo.moment(0.0).unwrap().to_f64() - 1.0 / 3.0).abs() < 4f64.powi(-30));
        assert!(Measure::lebesgue().moment(-1.0).is_err());
    }

    #[test]
    fn tiny_deltas_keep_precision() {
        // x = 1 − 1e−200, x^(1e200) = e^{−1}
        let mu = Measure::atoms(vec![Atom::new(1e-200, 1.0).unwrap()]).unwrap();
        assert!(close(
            mu.moment(1e200).unwrap().to_f64(),
            (-1.0f64).exp(),
            1e-13
        ));
        // δ = e^{−800} is below f64 range; a·δ = e^{−100}
        let mu = Measure::atoms(vec![Atom::from_logs(-800.0, 0.0).unwrap()]).unwrap();
        let v = mu.moment((700.0f64).exp()).unwrap();
        assert!(close(v.ln(), -(-100.0f64).exp(), 1e-12));
    }

    #[test]
    fn jacobi_quadrature_matches_beta() {
        let d = Measure::density(Density::jacobi(0.5, 1.5).unwrap());
        for a in [0.0, 1.0, 37.5, 1e4, 1e8] {
            let exact = d.moment(a).unwrap();
            let quad = d.integrate(a, 1e-13, |n| n.power(a)).value;
            assert!(
                close(quad.to_f64(), exact.to_f64(), 1e-10),
                "a={a}: {quad:?} vs {exact:?}"
            );
        }
    }

    #[test]
    fn ln_beta_large_argument() {
        // oracle: mpmath loggamma with 50 digits
        let v = ln_beta(1e8 + 1.5, 2.5);
        assert!((v + 45.767_019_045_657_994).abs() < 1e-11);
        let small = ln_beta(2.0, 3.0);
        assert!((small - (1.0f64 / 12.0).ln()).abs() < 1e-14);
        let mid = ln_beta(60.0, 2.0);
        assert!((mid - (1.0f64 / (60.0 * 61.0)).ln()).abs() < 1e-13);
    }

    #[test]
    fn lebesgue_restriction() {
        let r = Measure::lebesgue().restrict(0.0, 0.5).unwrap();
        assert!(close(r.total_mass(), 0.5, 1e-15));
        assert!(close(r.moment(1.0).unwrap().to_f64(), 0.125, 1e-14));
        let r = Measure::lebesgue().restrict(0.25, 0.75).unwrap();
        assert!(close(
            r.moment(2.0).unwrap().to_f64(),
            (0.75f64.powi(3) - 0.25f64.powi(3)) / 3.0,
            1e-14
        ));
        let r = Measure::lebesgue().restrict(1.0 - 1e-9, 1.0).unwrap();
        assert!(close(r.total_mass(), 1e-9, 1e-6));
    }

    #[test]
    fn atom_restriction() {
        let mu = Measure::atoms_at(&[(0.5, 1.0), (0.9, 2.0)]).unwrap();
        let r = mu.restrict(0.8, 1.0).unwrap();
        let atoms = r.atom_list().unwrap();
        assert_eq!(atoms.len(), 1);
        assert!(close(atoms[0].delta.to_f64(), 0.1, 1e-12));
        assert!(close(r.total_mass(), 2.0, 1e-15));
        let single = Measure::atoms_at(&[(0.5, 1.0)]).unwrap();
        let empty = single.restrict(0.6, 1.0).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.total_mass(), 0.0);
        assert!(mu.restrict(0.5, 0.5).is_err());
    }

    #[test]
    fn sublinear_examples() {
        let grid = EpsGrid::default();
        let one = Measure::atoms_at(&[(0.75, 1.0)]).unwrap();
        let rep = sublinear_norm(&one, &grid).unwrap();
        assert!(close(rep.norm_s, 4.0, 1e-14));
        assert!(close(rep.attaining_epsilon, 0.25, 1e-14));
        let rep = sublinear_norm(&Measure::lebesgue(), &grid).unwrap();
        assert!(close(rep.norm_s, 1.0, 1e-12));
        assert!(rep.grid_lower_bound);
        let two = Measure::atoms_at(&[(0.5, 1.0), (0.75, 1.0)]).unwrap();
        assert!(close(
            sublinear_norm(&two, &grid).unwrap().norm_s,
            4.0,
            1e-14
        ));
    }

    #[test]
    fn poisson_examples() {
        let geo = dyadic_atoms(30, |k| 4f64.powi(-(k as i32))).unwrap();
        let v = geo.poisson_integral().finite_value().unwrap();
        assert!((v - 1.0).abs() <= 2f64.powi(-30) * 1.0001);
        assert!(Measure::lebesgue().poisson_integral().divergent);
        let one = Measure::atoms_at(&[(0.9, 2.0)]).unwrap();
        assert!(close(
            one.poisson_integral().finite_value().unwrap(),
            20.0,
            1e-12
        ));
    }

    #[test]
    fn poisson_on_densities() {
        let j = Measure::density(Density::jacobi(0.0, 0.5).unwrap());
        // ∫ (1−t)^{−1/2} dt = 2
        assert!(close(
            j.poisson_integral().finite_value().unwrap(),
            2.0,
            1e-12
        ));
        let custom = Measure::density(Density::custom("sqrt", |_t, d| d.sqrt()));
        let p = custom.poisson_integral();
        assert!(p.heuristic);
        assert!(close(p.finite_value().unwrap(), 2.0, 1e-9), "{p:?}");
        let flat = Measure::density(Density::custom("flat", |_t, _d| 1.0));
        assert!(flat.poisson_integral().divergent);
    }

    #[test]
    fn scaling() {
        let half = Measure::lebesgue().scaled(0.5).unwrap();
        assert!(close(half.moment(1.0).unwrap().to_f64(), 0.25, 1e-15));
        let atoms = Measure::atoms_at(&[(0.5, 1.0)])
            .unwrap()
            .scaled(3.0)
            .unwrap();
        assert!(close(atoms.total_mass(), 3.0, 1e-15));
    }

    #[test]
    fn duplicate_atoms_rejected() {
        assert!(Measure::atoms_at(&[(0.5, 1.0), (0.5, 2.0)]).is_err());
        assert!(Atom::new(0.0, 1.0).is_err());
        assert!(Atom::new(0.5, 0.0).is_err());
    }
}
