//! Monogamy relations between a pivot party and the others.
//!
//! Each checker evaluates one relation on one state and returns a
//! [`MonogamyReport`] with every term it used, the bound, and the residual
//! `lhs − bound`. Terms carry the method that produced them so a failing sweep
//! can be traced to the closed form or to an optimizer.

use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use crate::canonical::{bloch_modulus, schmidt_two_qubit};
use crate::error::{Error, Result};
use crate::measures::{
    geometric_discord_closed, horodecki, min_hs_closed, min_hs_oracle, min_trace_norm_oracle, negativity,
    quantum_discord, Direction, Method, SearchOptions,
};
use crate::sampling::generalized_ghz;
use crate::state::{DensityMatrix, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Relation {
    MinPure,
    BellPair,
    ChainMixed,
    MultiBell,
    #[serde(rename = "NOSIGNALING")]
    NoSignaling,
    Averages,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::MinPure,
        Relation::BellPair,
        Relation::ChainMixed,
        Relation::MultiBell,
        Relation::NoSignaling,
        Relation::Averages,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::MinPure => "MIN_PURE",
            Relation::BellPair => "BELL_PAIR",
            Relation::ChainMixed => "CHAIN_MIXED",
            Relation::MultiBell => "MULTI_BELL",
            Relation::NoSignaling => "NOSIGNALING",
            Relation::Averages => "AVERAGES",
        }
    }

    /// 1e-6 where a term comes from a numerical search, 1e-9 otherwise.
    pub fn default_tolerance(&self) -> f64 {
        match self {
            Relation::ChainMixed | Relation::Averages => 1e-6,
            _ => 1e-9,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .into_iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown relation {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub name: String,
    pub value: f64,
    pub method: Method,
    /// Per-term bound, for relations that bound several quantities at once.
    pub bound: Option<f64>,
}

impl Term {
    fn new(name: impl Into<String>, value: f64, method: Method) -> Self {
        Self { name: name.into(), value, method, bound: None }
    }

    fn bounded(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonogamyReport {
    pub relation: Relation,
    pub state_id: String,
    pub terms: Vec<Term>,
    pub bound: f64,
    pub residual: f64,
    pub satisfied: bool,
    pub tolerance: f64,
    /// Named yes/no observations attached by some checkers.
    pub flags: Vec<(String, bool)>,
}

impl MonogamyReport {
    fn new(relation: Relation, terms: Vec<Term>, bound: f64, residual: f64, tolerance: f64) -> Self {
        Self {
            relation,
            state_id: String::new(),
            terms,
            bound,
            residual,
            satisfied: residual <= tolerance,
            tolerance,
            flags: Vec::new(),
        }
    }

    pub fn with_state_id(mut self, id: impl Into<String>) -> Self {
        self.state_id = id.into();
        self
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.terms.iter().find(|t| t.name == name).map(|t| t.value)
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }
}

struct TermValues<'a>(&'a [Term]);
struct TermMethods<'a>(&'a [Term]);
struct TermBounds<'a>(&'a [Term]);
struct Flags<'a>(&'a [(String, bool)]);

impl Serialize for TermValues<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for t in self.0 {
            map.serialize_entry(&t.name, &t.value)?;
        }
        map.end()
    }
}

impl Serialize for TermMethods<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for t in self.0 {
            map.serialize_entry(&t.name, t.method.as_str())?;
        }
        map.end()
    }
}

impl Serialize for TermBounds<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let bounded: Vec<_> = self.0.iter().filter_map(|t| t.bound.map(|b| (&t.name, b))).collect();
        let mut map = s.serialize_map(Some(bounded.len()))?;
        for (name, b) in bounded {
            map.serialize_entry(name, &b)?;
        }
        map.end()
    }
}

impl Serialize for Flags<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (name, v) in self.0 {
            map.serialize_entry(name, v)?;
        }
        map.end()
    }
}

impl Serialize for MonogamyReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MonogamyReport", 10)?;
        st.serialize_field("relation", &self.relation)?;
        st.serialize_field("state_id", &self.state_id)?;
        st.serialize_field("terms", &TermValues(&self.terms))?;
        st.serialize_field("bound", &self.bound)?;
        st.serialize_field("residual", &self.residual)?;
        st.serialize_field("satisfied", &self.satisfied)?;
        st.serialize_field("tolerance", &self.tolerance)?;
        st.serialize_field("methods", &TermMethods(&self.terms))?;
        st.serialize_field("term_bounds", &TermBounds(&self.terms))?;
        st.serialize_field("flags", &Flags(&self.flags))?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    /// Overrides [`Relation::default_tolerance`].
    pub tolerance: Option<f64>,
    pub search: SearchOptions,
}

impl CheckOptions {
    fn tolerance_for(&self, relation: Relation) -> f64 {
        self.tolerance.unwrap_or_else(|| relation.default_tolerance())
    }
}

/// Single-letter party names: qubit 0 is A, qubit 1 is B, …
pub fn party_name(qubit: usize) -> char {
    (b'A' + qubit as u8) as char
}

fn pair_name(prefix: &str, pivot: usize, other: usize) -> String {
    format!("{prefix}_{}{}", party_name(pivot), party_name(other))
}

fn rest_name(prefix: &str, pivot: usize, n: usize) -> String {
    let rest: String = (0..n).filter(|&q| q != pivot).map(party_name).collect();
    format!("{prefix}_{}_{rest}", party_name(pivot))
}

fn others(n: usize, pivot: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&q| q != pivot)
}

fn pair(rho: &DensityMatrix, pivot: usize, other: usize) -> Result<DensityMatrix> {
    rho.partial_trace(&[pivot, other])
}

fn require_at_least(rho: &DensityMatrix, n: usize) -> Result<()> {
    if rho.qubits() < n {
        return Err(Error::QubitCount { expected: n, got: rho.qubits() });
    }
    Ok(())
}

/// `D_M(A→B) + D_M(A→C) ≤ ½(1 − a²) = D_M(A→BC)` for a pure three-qubit state.
pub fn check_min_pure(psi: &PureState, opts: &CheckOptions) -> Result<MonogamyReport> {
    if psi.qubits() != 3 {
        return Err(Error::QubitCount { expected: 3, got: psi.qubits() });
    }
    let rho = psi.density();
    let dm_ab = min_hs_closed(&pair(&rho, 0, 1)?, Direction::AToB)?.value;
    let dm_ac = min_hs_closed(&pair(&rho, 0, 2)?, Direction::AToB)?.value;
    let a = bloch_modulus(psi, 0)?;
    let joint = 0.5 * (1.0 - a * a);
    let terms = vec![
        Term::new("DM_AB", dm_ab, Method::ClosedForm),
        Term::new("DM_AC", dm_ac, Method::ClosedForm),
        Term::new("DM_A_BC", joint, Method::ClosedForm),
    ];
    let tol = opts.tolerance_for(Relation::MinPure);
    Ok(MonogamyReport::new(Relation::MinPure, terms, joint, dm_ab + dm_ac - joint, tol))
}

/// `M(A:B) + M(A:C) ≤ 2` for any three-qubit state.
pub fn check_bell_monogamy(rho: &DensityMatrix, opts: &CheckOptions) -> Result<MonogamyReport> {
    rho.expect_qubits(3)?;
    let m_ab = horodecki(&pair(rho, 0, 1)?)?.value.value;
    let m_ac = horodecki(&pair(rho, 0, 2)?)?.value.value;
    let terms = vec![Term::new("M_AB", m_ab, Method::ClosedForm), Term::new("M_AC", m_ac, Method::ClosedForm)];
    let tol = opts.tolerance_for(Relation::BellPair);
    Ok(MonogamyReport::new(Relation::BellPair, terms, 2.0, m_ab + m_ac - 2.0, tol))
}

/// One pair's rungs of `N², D² ≤ 2D_G ≤ 2D_M ≤ ½M`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Rungs {
    n_sq: f64,
    d_sq: f64,
    two_dg: f64,
    two_dm: f64,
    half_m: f64,
}

impl Rungs {
    fn of(rho_pair: &DensityMatrix, search: &SearchOptions) -> Result<Self> {
        let n = negativity(rho_pair, &[0])?.value;
        let d = quantum_discord(rho_pair, 0, search)?.value;
        Ok(Rungs {
            n_sq: n * n,
            d_sq: d * d,
            two_dg: 2.0 * geometric_discord_closed(rho_pair, Direction::AToB)?.value,
            two_dm: 2.0 * min_hs_closed(rho_pair, Direction::AToB)?.value,
            half_m: 0.5 * horodecki(rho_pair)?.value.value,
        })
    }

    /// Largest violation of the pointwise ordering.
    fn worst_gap(&self) -> f64 {
        [self.n_sq - self.two_dg, self.d_sq - self.two_dg, self.two_dg - self.two_dm, self.two_dm - self.half_m]
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// The weak chain for three-qubit states, per pair and summed:
/// `ΣN², ΣD² ≤ 2ΣD_G ≤ 2ΣD_M ≤ ½ΣM ≤ 1`.
///
/// The residual is the largest violation over every rung, including the final
/// bound. The report also evaluates `D_M(A→BC)` and flags whether the pure-state
/// MIN relation `D_M(A→B) + D_M(A→C) ≤ D_M(A→BC)` fails for this state.
pub fn check_chain_mixed(rho: &DensityMatrix, opts: &CheckOptions) -> Result<MonogamyReport> {
    rho.expect_qubits(3)?;
    let ab = Rungs::of(&pair(rho, 0, 1)?, &opts.search)?;
    let ac = Rungs::of(&pair(rho, 0, 2)?, &opts.search)?;
    let mut terms = Vec::new();
    for (x, r) in [('B', &ab), ('C', &ac)] {
        terms.push(Term::new(format!("N2_A{x}"), r.n_sq, Method::ClosedForm));
        terms.push(Term::new(format!("D2_A{x}"), r.d_sq, Method::Oracle));
        terms.push(Term::new(format!("2DG_A{x}"), r.two_dg, Method::ClosedForm));
        terms.push(Term::new(format!("2DM_A{x}"), r.two_dm, Method::ClosedForm));
        terms.push(Term::new(format!("halfM_A{x}"), r.half_m, Method::ClosedForm));
    }
    let sum = |f: fn(&Rungs) -> f64| f(&ab) + f(&ac);
    let sums = Rungs {
        n_sq: sum(|r| r.n_sq),
        d_sq: sum(|r| r.d_sq),
        two_dg: sum(|r| r.two_dg),
        two_dm: sum(|r| r.two_dm),
        half_m: sum(|r| r.half_m),
    };
    terms.push(Term::new("N2_sum", sums.n_sq, Method::ClosedForm));
    terms.push(Term::new("D2_sum", sums.d_sq, Method::Oracle));
    terms.push(Term::new("2DG_sum", sums.two_dg, Method::ClosedForm));
    terms.push(Term::new("2DM_sum", sums.two_dm, Method::ClosedForm));
    terms.push(Term::new("halfM_sum", sums.half_m, Method::ClosedForm));

    let dm_sum = sums.two_dm / 2.0;
    let dm_joint = min_hs_oracle(rho, 0, &opts.search)?.value;
    terms.push(Term::new("DM_sum", dm_sum, Method::ClosedForm));
    terms.push(Term::new("DM_A_BC", dm_joint, Method::Oracle));

    let tol = opts.tolerance_for(Relation::ChainMixed);
    let residual = ab.worst_gap().max(ac.worst_gap()).max(sums.half_m - 1.0);
    let mut report = MonogamyReport::new(Relation::ChainMixed, terms, 1.0, residual, tol);
    report.flags.push(("min_pure_violated".into(), dm_sum > dm_joint + tol));
    Ok(report)
}

fn pair_horodecki(rho: &DensityMatrix, pivot: usize) -> Result<Vec<(usize, f64)>> {
    require_at_least(rho, 3)?;
    rho.check_qubit(pivot)?;
    others(rho.qubits(), pivot).map(|q| Ok((q, horodecki(&pair(rho, pivot, q)?)?.value.value))).collect()
}

/// `Σ_X M(A:X) ≤ n − 1` over the `n − 1` partners `X` of the pivot.
pub fn multiqubit_bell_sum(rho: &DensityMatrix, pivot: usize, opts: &CheckOptions) -> Result<MonogamyReport> {
    let values = pair_horodecki(rho, pivot)?;
    let bound = (rho.qubits() - 1) as f64;
    let total: f64 = values.iter().map(|&(_, m)| m).sum();
    let terms = values.iter().map(|&(q, m)| Term::new(pair_name("M", pivot, q), m, Method::ClosedForm)).collect();
    let tol = opts.tolerance_for(Relation::MultiBell);
    Ok(MonogamyReport::new(Relation::MultiBell, terms, bound, total - bound, tol))
}

/// The no-signaling bound `Σ_X √M(A:X) ≤ n − 1`. The flag
/// `implied_by_bell_sum` records whether `√((n−1)·ΣM) ≤ n − 1`, i.e. whether
/// the quantum bound on `ΣM` already forces this instance by Cauchy–Schwarz.
pub fn nosignaling_sum(rho: &DensityMatrix, pivot: usize, opts: &CheckOptions) -> Result<MonogamyReport> {
    let values = pair_horodecki(rho, pivot)?;
    let bound = (rho.qubits() - 1) as f64;
    let total: f64 = values.iter().map(|&(_, m)| m.max(0.0).sqrt()).sum();
    let m_total: f64 = values.iter().map(|&(_, m)| m).sum();
    let terms = values
        .iter()
        .map(|&(q, m)| Term::new(pair_name("sqrtM", pivot, q), m.max(0.0).sqrt(), Method::ClosedForm))
        .collect();
    let tol = opts.tolerance_for(Relation::NoSignaling);
    let mut report = MonogamyReport::new(Relation::NoSignaling, terms, bound, total - bound, tol);
    report.flags.push(("implied_by_bell_sum".into(), (bound * m_total.max(0.0)).sqrt() <= bound + tol));
    Ok(report)
}

/// Pivot-averaged measures over the `n − 1` pairs:
/// `M̄ ≤ 1`, `D̄_M ≤ ¼`, `D̄_G ≤ ¼`, `D̄ ≤ 1/√2`, `N̄ ≤ 1/√2`.
pub fn averages(rho: &DensityMatrix, pivot: usize, opts: &CheckOptions) -> Result<MonogamyReport> {
    require_at_least(rho, 3)?;
    rho.check_qubit(pivot)?;
    let partners = rho.qubits() - 1;
    let mut sums = [0.0f64; 5];
    for q in others(rho.qubits(), pivot) {
        let p = pair(rho, pivot, q)?;
        sums[0] += horodecki(&p)?.value.value;
        sums[1] += min_hs_closed(&p, Direction::AToB)?.value;
        sums[2] += geometric_discord_closed(&p, Direction::AToB)?.value;
        sums[3] += quantum_discord(&p, 0, &opts.search)?.value;
        sums[4] += negativity(&p, &[0])?.value;
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let spec = [
        ("M_bar", 1.0, Method::ClosedForm),
        ("DM_bar", 0.25, Method::ClosedForm),
        ("DG_bar", 0.25, Method::ClosedForm),
        ("D_bar", inv_sqrt2, Method::Oracle),
        ("N_bar", inv_sqrt2, Method::ClosedForm),
    ];
    let mut terms = Vec::new();
    let mut residual = f64::NEG_INFINITY;
    for (k, (name, bound, method)) in spec.into_iter().enumerate() {
        let avg = sums[k] / partners as f64;
        residual = residual.max(avg - bound);
        terms.push(Term::new(name, avg, method).bounded(bound));
    }
    let tol = opts.tolerance_for(Relation::Averages);
    Ok(MonogamyReport::new(Relation::Averages, terms, 1.0, residual, tol))
}

/// Dispatches to the checker for `relation`. `MIN_PURE` needs the state
/// vector; the others accept any density matrix of suitable size. The three
/// tripartite relations always pivot on qubit 0.
pub fn check(
    relation: Relation,
    rho: &DensityMatrix,
    pure: Option<&PureState>,
    pivot: usize,
    opts: &CheckOptions,
) -> Result<MonogamyReport> {
    let fixed_pivot = || {
        if pivot != 0 {
            return Err(Error::InvalidParameter(format!("{relation} pivots on qubit 0, got {pivot}")));
        }
        Ok(())
    };
    match relation {
        Relation::MinPure => {
            fixed_pivot()?;
            check_min_pure(pure.ok_or(Error::NotPureState)?, opts)
        }
        Relation::BellPair => fixed_pivot().and_then(|_| check_bell_monogamy(rho, opts)),
        Relation::ChainMixed => fixed_pivot().and_then(|_| check_chain_mixed(rho, opts)),
        Relation::MultiBell => multiqubit_bell_sum(rho, pivot, opts),
        Relation::NoSignaling => nosignaling_sum(rho, pivot, opts),
        Relation::Averages => averages(rho, pivot, opts),
    }
}

// Named states

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Counterexample {
    /// `½(|010⟩ + |011⟩ + |100⟩ + |101⟩)`, saturating both pure-state relations.
    Saturating3,
    /// `(|000⟩ + |111⟩)/√2`.
    Ghz3,
    /// `α|000⟩ + β|111⟩`.
    GenGhz(f64),
    /// `½(|000⟩⟨000| + |111⟩⟨111|)`.
    MixedGhz3,
    /// `½(|0…0⟩⟨0…0| + |1…1⟩⟨1…1|)` on `n` qubits.
    MixedGhzN(usize),
    /// The GHZ state, evaluated with the trace-norm MIN.
    Ghz3ForN1,
}

impl Counterexample {
    pub const NAMES: [&'static str; 6] =
        ["saturating3", "ghz3", "gen_ghz(α)", "mixed_ghz3", "mixed_ghz_n(n)", "ghz3_for_N1"];

    pub fn name(&self) -> String {
        match self {
            Counterexample::Saturating3 => "saturating3".into(),
            Counterexample::Ghz3 => "ghz3".into(),
            Counterexample::GenGhz(a) => format!("gen_ghz({a})"),
            Counterexample::MixedGhz3 => "mixed_ghz3".into(),
            Counterexample::MixedGhzN(n) => format!("mixed_ghz_n({n})"),
            Counterexample::Ghz3ForN1 => "ghz3_for_N1".into(),
        }
    }
}

impl FromStr for Counterexample {
    type Err = Error;

    /// Accepts `gen_ghz(0.8)` or `gen_ghz:0.8`, likewise for `mixed_ghz_n`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.find(['(', ':']) {
            Some(i) => (&s[..i], Some(s[i + 1..].trim_end_matches(')').trim())),
            None => (s, None),
        };
        let unknown = || Error::InvalidParameter(format!("unknown counterexample {s:?}"));
        let bad_arg = || Error::InvalidParameter(format!("bad argument in {s:?}"));
        let ce = match (head.to_ascii_lowercase().as_str(), arg) {
            ("saturating3", None) => Counterexample::Saturating3,
            ("ghz3", None) => Counterexample::Ghz3,
            ("mixed_ghz3", None) => Counterexample::MixedGhz3,
            ("ghz3_for_n1", None) => Counterexample::Ghz3ForN1,
            ("gen_ghz", Some(a)) => Counterexample::GenGhz(a.parse().map_err(|_| bad_arg())?),
            ("mixed_ghz_n", Some(n)) => Counterexample::MixedGhzN(n.parse().map_err(|_| bad_arg())?),
            _ => return Err(unknown()),
        };
        if let Counterexample::GenGhz(a) = ce {
            if !(a.abs() > 0.0 && a.abs() < 1.0) {
                return Err(Error::InvalidParameter(format!("|α| = {} outside (0, 1)", a.abs())));
            }
        }
        if let Counterexample::MixedGhzN(n) = ce {
            if !(3..=10).contains(&n) {
                return Err(Error::InvalidParameter(format!("mixed_ghz_n needs 3 ≤ n ≤ 10, got {n}")));
            }
        }
        Ok(ce)
    }
}

/// How to compute one expected value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    /// Closed-form `D_M(measured → other)` on the pair marginal.
    MinHsPair { measured: usize, other: usize },
    /// Oracle `D_M(measured → rest)` on the full state.
    MinHsCut { measured: usize },
    /// `M` on the pair marginal.
    HorodeckiPair { a: usize, b: usize },
    /// `M` across `party : rest` of a pure state, via the Schmidt two-qubit form.
    HorodeckiCut { party: usize },
    /// `N²` across `party : rest`.
    NegativitySqCut { party: usize },
    /// Oracle trace-norm MIN on the pair marginal.
    MinTracePair { measured: usize, other: usize },
    /// Oracle trace-norm MIN across `measured : rest`.
    MinTraceCut { measured: usize },
}

impl Quantity {
    pub fn method(&self) -> Method {
        match self {
            Quantity::MinHsCut { .. } | Quantity::MinTracePair { .. } | Quantity::MinTraceCut { .. } => Method::Oracle,
            _ => Method::ClosedForm,
        }
    }

    /// Matching tolerance for stored values: 1e-9 for closed forms, 1e-5 for searches.
    pub fn tolerance(&self) -> f64 {
        match self.method() {
            Method::ClosedForm => 1e-9,
            Method::Oracle => 1e-5,
        }
    }

    fn evaluate(&self, rho: &DensityMatrix, pure: Option<&PureState>, search: &SearchOptions) -> Result<f64> {
        Ok(match *self {
            Quantity::MinHsPair { measured, other } => {
                min_hs_closed(&pair(rho, measured, other)?, Direction::AToB)?.value
            }
            Quantity::MinHsCut { measured } => min_hs_oracle(rho, measured, search)?.value,
            Quantity::HorodeckiPair { a, b } => horodecki(&pair(rho, a, b)?)?.value.value,
            Quantity::HorodeckiCut { party } => {
                let psi = pure.ok_or_else(|| Error::InvalidParameter("cut Horodecki needs a pure state".into()))?;
                horodecki(&schmidt_two_qubit(psi, party)?.density())?.value.value
            }
            Quantity::NegativitySqCut { party } => negativity(rho, &[party])?.value.powi(2),
            Quantity::MinTracePair { measured, other } => {
                min_trace_norm_oracle(&pair(rho, measured, other)?, 0, search)?.value
            }
            Quantity::MinTraceCut { measured } => min_trace_norm_oracle(rho, measured, search)?.value,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedValue {
    pub term: String,
    pub value: f64,
    pub quantity: Quantity,
}

#[derive(Debug, Clone)]
pub struct CounterexampleCase {
    pub name: String,
    pub state: DensityMatrix,
    pub pure: Option<PureState>,
    pub expected: Vec<ExpectedValue>,
}

fn expect(term: impl Into<String>, value: f64, quantity: Quantity) -> ExpectedValue {
    ExpectedValue { term: term.into(), value, quantity }
}

fn mixed_ghz(n: usize) -> Result<DensityMatrix> {
    let zeros = DensityMatrix::basis_projector(&vec![0; n]);
    let ones = DensityMatrix::basis_projector(&vec![1; n]);
    DensityMatrix::mixture(&[(0.5, &zeros), (0.5, &ones)])
}

/// Builds a named state together with its known measure values.
pub fn counterexample(which: Counterexample) -> Result<CounterexampleCase> {
    use Quantity::*;
    let one = num_complex::Complex64::from(1.0);
    let (pure, state, expected) = match which {
        Counterexample::Saturating3 => {
            let psi = PureState::from_terms(3, &[(0b010, one), (0b011, one), (0b100, one), (0b101, one)])?;
            let expected = vec![
                expect("DM_AB", 0.5, MinHsPair { measured: 0, other: 1 }),
                expect("DM_AC", 0.0, MinHsPair { measured: 0, other: 2 }),
                expect("DM_A_BC", 0.5, MinHsCut { measured: 0 }),
                expect("M_AB", 2.0, HorodeckiPair { a: 0, b: 1 }),
                expect("M_AC", 0.0, HorodeckiPair { a: 0, b: 2 }),
            ];
            (Some(psi.clone()), psi.density(), expected)
        }
        Counterexample::Ghz3 => {
            let psi = PureState::from_terms(3, &[(0, one), (7, one)])?;
            let expected = vec![
                expect("DM_A_BC", 0.5, MinHsCut { measured: 0 }),
                expect("M_A_BC", 2.0, HorodeckiCut { party: 0 }),
                expect("N2_A_BC", 1.0, NegativitySqCut { party: 0 }),
            ];
            (Some(psi.clone()), psi.density(), expected)
        }
        Counterexample::GenGhz(alpha) => {
            let psi = generalized_ghz(3, alpha.abs())?;
            let a2 = alpha * alpha;
            let b2 = 1.0 - a2;
            let expected = vec![
                expect("M_AB", 1.0, HorodeckiPair { a: 0, b: 1 }),
                expect("M_AC", 1.0, HorodeckiPair { a: 0, b: 2 }),
                expect("M_A_BC", 2.0 - (a2 - b2).powi(2), HorodeckiCut { party: 0 }),
            ];
            (Some(psi.clone()), psi.density(), expected)
        }
        Counterexample::MixedGhz3 => {
            let expected = vec![
                expect("DM_AB", 0.25, MinHsPair { measured: 0, other: 1 }),
                expect("DM_AC", 0.25, MinHsPair { measured: 0, other: 2 }),
                expect("DM_A_BC", 0.25, MinHsCut { measured: 0 }),
            ];
            (None, mixed_ghz(3)?, expected)
        }
        Counterexample::MixedGhzN(n) => {
            let mut expected: Vec<_> =
                (1..n).map(|q| expect(pair_name("DM", 0, q), 0.25, MinHsPair { measured: 0, other: q })).collect();
            expected.push(expect(rest_name("DM", 0, n), 0.25, MinHsCut { measured: 0 }));
            (None, mixed_ghz(n)?, expected)
        }
        Counterexample::Ghz3ForN1 => {
            let psi = PureState::from_terms(3, &[(0, one), (7, one)])?;
            let expected = vec![
                expect("N1_AB", 1.0, MinTracePair { measured: 0, other: 1 }),
                expect("N1_AC", 1.0, MinTracePair { measured: 0, other: 2 }),
                expect("N1_A_BC", 1.0, MinTraceCut { measured: 0 }),
            ];
            (Some(psi.clone()), psi.density(), expected)
        }
    };
    Ok(CounterexampleCase { name: which.name(), state, pure, expected })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleRow {
    pub term: String,
    pub expected: f64,
    pub computed: f64,
    pub deviation: f64,
    pub method: Method,
    pub tolerance: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub name: String,
    pub rows: Vec<CounterexampleRow>,
    pub max_deviation: f64,
    pub satisfied: bool,
}

impl CounterexampleReport {
    pub fn row(&self, term: &str) -> Option<&CounterexampleRow> {
        self.rows.iter().find(|r| r.term == term)
    }
}

/// Recomputes every stored value of a named state.
pub fn evaluate_counterexample(case: &CounterexampleCase, search: &SearchOptions) -> Result<CounterexampleReport> {
    let mut rows = Vec::new();
    for e in &case.expected {
        let computed = e.quantity.evaluate(&case.state, case.pure.as_ref(), search)?;
        let deviation = (computed - e.value).abs();
        let tolerance = e.quantity.tolerance();
        rows.push(CounterexampleRow {
            term: e.term.clone(),
            expected: e.value,
            computed,
            deviation,
            method: e.quantity.method(),
            tolerance,
            ok: deviation <= tolerance,
        });
    }
    let max_deviation = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    let satisfied = rows.iter().all(|r| r.ok);
    Ok(CounterexampleReport { name: case.name.clone(), rows, max_deviation, satisfied })
}
