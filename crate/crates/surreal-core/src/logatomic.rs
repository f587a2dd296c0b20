//! The log-atomic grid: positions `θ_a ± n` and the intervals between them,
//! the `ρ` / `λ` parametrisation formulas, the piecewise `h` / `g` rewrites,
//! and a recognizer for log-atomic numbers.
//!
//! The published formulas admit more than one literal reading; a
//! [`Convention`] fixes one. The audit compares all four readings against the
//! defining fixed-point equations, so a "wrong" convention is a reportable
//! verdict rather than a crash.

use crate::error::{Error, Result};
use crate::maps::{map_iota, map_mo, map_mo_inv, map_xi_va_omega, StructParams};
use crate::number::{Number, Run, Segment, Sign, TailDescriptor};
use crate::ord::{ExtOrdinal, OrdinalTerm};

/// How many grid offsets the ρ-inverter scans when recovering an interval
/// position, and how deep a tower peel may go.
const INVERT_SCAN: i64 = 12;
const PEEL_LIMIT: usize = 48;

/// Run-prefix depth used when verifying candidate inversions against numbers
/// with symbolic tails.
pub const EQ_CHECK_RUNS: usize = 32;

/// A position on the log-atomic grid over base point `θ_a = ω ×̇ a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Position {
    /// The grid point `θ_a ∔ n` itself.
    Grid { a: Number, n: i64 },
    /// A point strictly between two grid points: for `n ≥ 0` the piece just
    /// above `θ_a − (n+1)` (`z = θ_a ∔ (−(n+1)) ∔ 1 ∔ t`), for `n < 0` the
    /// piece just below `θ_a ∔ (−n)` (`z = θ_a ∔ (−n) ∔ (−1) ∔ t`).
    Interval { a: Number, n: i64, t: Number },
}

/// Reading of the interval formula on the right-hand (n < 0) side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RightInfix {
    /// `ρ = ρ_{θ∔m} ∔ Ξ_{V_a}^ω t` with no separating signs.
    Plain,
    /// `ρ = ρ_{θ∔m} ∔ 1 ∔ (−δ_a) ∔ Ξ_{V_a}^ω t`.
    OneMinusDelta,
}

/// A fixed literal reading of the grid formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Convention {
    /// Number of ω-map applications for grid index `n > 0` is
    /// `n − exp_index_shift`.
    pub exp_index_shift: u8,
    pub right_infix: RightInfix,
}

impl Convention {
    pub const PAPER_VERBATIM: Convention =
        Convention { exp_index_shift: 0, right_infix: RightInfix::Plain };
    pub const SHIFTED_EXP: Convention =
        Convention { exp_index_shift: 1, right_infix: RightInfix::Plain };
    pub const GUARDED_INFIX: Convention =
        Convention { exp_index_shift: 0, right_infix: RightInfix::OneMinusDelta };
    pub const SHIFTED_GUARDED: Convention =
        Convention { exp_index_shift: 1, right_infix: RightInfix::OneMinusDelta };

    pub const ALL: [Convention; 4] = [
        Convention::PAPER_VERBATIM,
        Convention::SHIFTED_EXP,
        Convention::GUARDED_INFIX,
        Convention::SHIFTED_GUARDED,
    ];

    pub fn name(&self) -> &'static str {
        match (self.exp_index_shift, self.right_infix) {
            (0, RightInfix::Plain) => "paper-verbatim",
            (1, RightInfix::Plain) => "shifted-exp",
            (0, RightInfix::OneMinusDelta) => "guarded-infix",
            (_, RightInfix::OneMinusDelta) => "shifted-guarded",
            _ => "paper-verbatim",
        }
    }

    pub fn from_name(name: &str) -> Option<Convention> {
        Convention::ALL.iter().copied().find(|c| c.name() == name)
    }
}

impl Default for Convention {
    fn default() -> Self {
        Convention::PAPER_VERBATIM
    }
}

/// `θ_a = ω ×̇ a`.
pub fn theta(a: &Number) -> Result<Number> {
    a.scale_left(&OrdinalTerm::omega())
}

fn nat_to_i64(n: &num::bigint::BigUint) -> Result<i64> {
    u64::try_from(n)
        .ok()
        .and_then(|v| i64::try_from(v).ok())
        .ok_or_else(|| Error::DomainError("grid offset exceeds i64".into()))
}

/// Decompose a tail-free number into its grid position.
pub fn la_decompose(z: &Number) -> Result<Position> {
    let runs = z.explicit_runs()?;
    let mut a_runs: Vec<Run> = Vec::new();
    let mut i = 0usize;
    let mut boundary: Option<(Sign, i64)> = None;
    while i < runs.len() {
        let (limit, fin) = runs[i].len.split();
        if fin == 0u32.into() {
            a_runs.push(Run::new(runs[i].sign, limit.div_omega()?));
            i += 1;
            continue;
        }
        // First run with a finite part: the grid boundary.
        if !limit.is_zero() {
            a_runs.push(Run::new(runs[i].sign, limit.div_omega()?));
        }
        boundary = Some((runs[i].sign, nat_to_i64(&fin)?));
        break;
    }
    let a = Number::from_runs(a_runs)?;
    let Some((sign, k)) = boundary else {
        return Ok(Position::Grid { a, n: 0 });
    };
    let rest = &runs[i + 1..];
    if rest.is_empty() {
        let n = if sign == Sign::Plus { k } else { -k };
        return Ok(Position::Grid { a, n });
    }
    // z = θ_a ∔ (±k) ∔ (∓1) ∔ t: strip one sign from the deviation run.
    let mut t_runs = rest.to_vec();
    debug_assert_ne!(t_runs[0].sign, sign);
    let shortened = OrdinalTerm::one().left_sub(&t_runs[0].len).expect("run ≥ 1");
    if shortened.is_zero() {
        t_runs.remove(0);
    } else {
        t_runs[0].len = shortened;
    }
    let t = Number::from_runs(t_runs)?;
    if sign == Sign::Plus {
        Ok(Position::Interval { a, n: -k, t })
    } else {
        Ok(Position::Interval { a, n: k - 1, t })
    }
}

/// Inverse of [`la_decompose`].
pub fn la_rebuild(pos: &Position) -> Result<Number> {
    match pos {
        Position::Grid { a, n } => theta(a)?.concat(&Number::from_int(*n)),
        Position::Interval { a, n, t } => {
            let base = theta(a)?;
            if *n >= 0 {
                base.concat(&Number::from_int(-(n + 1)))?
                    .concat(&Number::from_int(1))?
                    .concat(t)
            } else {
                base.concat(&Number::from_int(-n))?
                    .concat(&Number::from_int(-1))?
                    .concat(t)
            }
        }
    }
}

/// The projection of `x ∈ (θ_a ∔ (m−1), θ_a ∔ m)`-style interval membership
/// onto its interval parameter: the `t` with `x = grid ∔ (∓1) ∔ t`.
pub fn la_interval_param(a: &Number, n: i64, x: &Number) -> Result<Number> {
    match la_decompose(x)? {
        Position::Interval { a: xa, n: xn, t } if &xa == a && xn == n => Ok(t),
        _ => Err(Error::OutOfInterval),
    }
}

/// Grid index shift: `z = θ_a ∔ n ↦ θ_a ∔ (n + k)`, and the matching move on
/// interval positions.
pub fn la_shift(z: &Number, k: i64) -> Result<Number> {
    let pos = match la_decompose(z)? {
        Position::Grid { a, n } => Position::Grid {
            a,
            n: n.checked_add(k).ok_or_else(|| Error::DomainError("grid offset overflow".into()))?,
        },
        Position::Interval { a, n, t } => Position::Interval {
            a,
            n: n.checked_sub(k).ok_or_else(|| Error::DomainError("grid offset overflow".into()))?,
            t,
        },
    };
    la_rebuild(&pos)
}

/// The tower `Ξ_Mo^{reps}(ς_a ∔ 1)`.
fn mo_tower(p: &StructParams, reps: u32) -> Result<Number> {
    let mut t = Number::from_ordinal(&p.sigma.succ());
    for _ in 0..reps {
        t = map_mo(&t)?;
    }
    Ok(t)
}

/// `ρ` at a grid point: `ι_a` for `n = 0`, `ι_a ∔ (−|n|)` for `n < 0`, and
/// `ι_a ∔ Ξ_Mo^{n − shift}(ς_a ∔ 1)` for `n > 0`.
pub fn rho_grid(a: &Number, n: i64, conv: &Convention) -> Result<Number> {
    let iota = map_iota(a)?;
    if n == 0 {
        return Ok(iota);
    }
    if n < 0 {
        return iota.concat(&Number::from_int(n));
    }
    let shift = conv.exp_index_shift as i64;
    let reps = n - shift;
    if reps < 0 {
        return Err(Error::DomainError("grid index below the convention's tower base".into()));
    }
    let p = StructParams::new(a);
    iota.concat(&mo_tower(&p, reps as u32)?)
}

/// `ρ` at any position.
pub fn rho_of_position(pos: &Position, conv: &Convention) -> Result<Number> {
    match pos {
        Position::Grid { a, n } => rho_grid(a, *n, conv),
        Position::Interval { a, n, t } => {
            let p = StructParams::new(a);
            let v = map_xi_va_omega(&p, t)?;
            let delta = Number::from_ordinal(&p.delta);
            if *n >= 0 {
                rho_grid(a, -(n + 1), conv)?
                    .concat(&Number::from_int(1))?
                    .concat(&delta.neg())?
                    .concat(&v)
            } else {
                let m = -n - 1;
                match conv.right_infix {
                    RightInfix::Plain => rho_grid(a, m, conv)?.concat(&v),
                    RightInfix::OneMinusDelta => rho_grid(a, m, conv)?
                        .concat(&Number::from_int(1))?
                        .concat(&delta.neg())?
                        .concat(&v),
                }
            }
        }
    }
}

/// `ρ_z` for a tail-free index `z`.
pub fn la_rho(z: &Number, conv: &Convention) -> Result<Number> {
    rho_of_position(&la_decompose(z)?, conv)
}

/// `λ_z = ω̇^{ω̇^{ρ_z}}`.
pub fn la_lambda(z: &Number, conv: &Convention) -> Result<Number> {
    map_mo(&map_mo(&la_rho(z, conv)?)?)
}

/// `E_x = λ_x` on the stated domain: positive purely infinite index below
/// ε₀ in length.
pub fn la_e(x: &Number, conv: &Convention) -> Result<Number> {
    let runs = x.explicit_runs()?;
    let eps0 = OrdinalTerm::eps(&ExtOrdinal::zero());
    let ok = matches!(runs.first(), Some(r) if r.sign == Sign::Plus && r.len >= OrdinalTerm::omega())
        && x.len() < eps0;
    if !ok {
        return Err(Error::DomainError(
            "E requires a positive index with an infinite leading plus run and length below eps(0)"
                .into(),
        ));
    }
    la_lambda(x, conv)
}

// ---------------------------------------------------------------------------
// Piecewise h / g rewrites
// ---------------------------------------------------------------------------

fn number_minus_delta(p: &StructParams) -> Number {
    Number::from_ordinal(&p.delta).neg()
}

/// The piecewise description of `h` (`log λ_z = ω̇^{ω̇^{h(ρ_z)}}` with
/// `h(ρ_z) = ω̇^{ρ_{z−1}}`) on the interval below `θ_a − n`:
///
/// * (b) `h(ρ_{θ−n−1} ∔ 1 ∔ (−δ_a) ∔ z) = ω̇^{ρ_{θ−n−2}} ∔ 1 ∔ z`;
/// * (a) `h(ρ_{θ−n−1} ∔ 1 ∔ z) = ω̇^{ρ_{θ−n−1}} ∔ (−1) ∔ z` when
///   `(−δ_a) ⊑ z` fails.
pub fn la_h_piece(a: &Number, n: i64, x: &Number, conv: &Convention) -> Result<Number> {
    if n < 0 {
        return Err(Error::DomainError("h pieces are indexed by n ≥ 0".into()));
    }
    let p = StructParams::new(a);
    let minus_delta = number_minus_delta(&p);
    let one = Number::from_int(1);
    let base = rho_grid(a, -(n + 1), conv)?.concat(&one)?;
    let pref_b = base.concat(&minus_delta)?;
    if let Some(z) = x.strip_prefix(&pref_b)? {
        return map_mo(&rho_grid(a, -(n + 2), conv)?)?.concat(&one)?.concat(&z);
    }
    if let Some(z) = x.strip_prefix(&base)? {
        if !minus_delta.is_initial(&z)? {
            return map_mo(&rho_grid(a, -(n + 1), conv)?)?
                .concat(&Number::from_int(-1))?
                .concat(&z);
        }
    }
    Err(Error::PatternMismatch(format!("h piece (a={a}, n={n}) does not cover {x}")))
}

/// The piecewise description of `g` (`exp λ_z = ω̇^{ω̇^{g(ω̇^{ρ_z})}}` with
/// `g(ω̇^{ρ_z}) = ρ_{z∔1}`):
///
/// * for `n > 0`: (b) `g(ω̇^{ρ_{θ+n−1}} ∔ W ∔ z) = ρ_{θ+n+1} ∔ (−1) ∔ z`
///   when `z < 0`, with `W = Ξ_Mo^{n+1}(ς_a ∔ 1)`; (a)
///   `g(ω̇^{ρ_{θ+n−1}} ∔ 1 ∔ z) = ρ_{θ+n} ∔ 1 ∔ z` when `W ⊑ z` fails;
/// * for `n = 0`: (d) `g(ω̇^{ρ_θ} ∔ (−δ_a) ∔ z) = ρ_θ ∔ z` when `z > 0`;
///   (c) `g(ω̇^{ρ_θ} ∔ (−1) ∔ z) = ρ_θ ∔ 1 ∔ z` when `(−δ_a) ⊑ z` fails.
pub fn la_g_piece(a: &Number, n: i64, x: &Number, conv: &Convention) -> Result<Number> {
    if n < 0 {
        return Err(Error::DomainError("g pieces are indexed by n ≥ 0".into()));
    }
    let p = StructParams::new(a);
    let one = Number::from_int(1);
    if n > 0 {
        let w = mo_tower(&p, (n + 1) as u32)?;
        let head = map_mo(&rho_grid(a, n - 1, conv)?)?;
        if let Some(z) = x.strip_prefix(&head.concat(&w)?)? {
            if z.sign_of() == std::cmp::Ordering::Less {
                return rho_grid(a, n + 1, conv)?.concat(&Number::from_int(-1))?.concat(&z);
            }
        }
        if let Some(z) = x.strip_prefix(&head.concat(&one)?)? {
            if !w.is_initial(&z)? {
                return rho_grid(a, n, conv)?.concat(&one)?.concat(&z);
            }
        }
    } else {
        let minus_delta = number_minus_delta(&p);
        let head = map_mo(&rho_grid(a, 0, conv)?)?;
        if let Some(z) = x.strip_prefix(&head.concat(&minus_delta)?)? {
            if z.sign_of() == std::cmp::Ordering::Greater {
                return rho_grid(a, 0, conv)?.concat(&z);
            }
        }
        if let Some(z) = x.strip_prefix(&head.concat(&Number::from_int(-1))?)? {
            if !minus_delta.is_initial(&z)? {
                return rho_grid(a, 0, conv)?.concat(&one)?.concat(&z);
            }
        }
    }
    Err(Error::PatternMismatch(format!("g piece (a={a}, n={n}) does not cover {x}")))
}

// ---------------------------------------------------------------------------
// Recognizing log-atomic numbers
// ---------------------------------------------------------------------------

/// Three-valued answer of [`la_is_log_atomic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogAtomicCheck {
    /// `x = λ_z` for the reported grid index `z`.
    Yes { index: Number },
    No,
    /// The run budget was exhausted before a verdict.
    Unknown,
}

/// Decide whether `x = λ_z` for some representable `z`, by inverting the
/// ω-map twice and then inverting `ρ`.
pub fn la_is_log_atomic(x: &Number, conv: &Convention) -> LogAtomicCheck {
    let r1 = match map_mo_inv(x) {
        Ok(v) => v,
        Err(Error::BudgetExceeded(_)) => return LogAtomicCheck::Unknown,
        Err(_) => return LogAtomicCheck::No,
    };
    let r2 = match map_mo_inv(&r1) {
        Ok(v) => v,
        Err(Error::BudgetExceeded(_)) => return LogAtomicCheck::Unknown,
        Err(_) => return LogAtomicCheck::No,
    };
    match invert_rho(&r2, conv) {
        Ok(Some(pos)) => match la_rebuild(&pos) {
            Ok(z) => LogAtomicCheck::Yes { index: z },
            Err(_) => LogAtomicCheck::Unknown,
        },
        Ok(None) => LogAtomicCheck::No,
        Err(Error::BudgetExceeded(_)) => LogAtomicCheck::Unknown,
        Err(_) => LogAtomicCheck::No,
    }
}

/// Invert `ρ`: find the position whose `ρ` equals `r`, if any.
pub fn invert_rho(r: &Number, conv: &Convention) -> Result<Option<Position>> {
    let tails: Vec<usize> = r
        .segments()
        .iter()
        .enumerate()
        .filter_map(|(i, s)| matches!(s, Segment::Tail(_)).then_some(i))
        .collect();
    match tails.as_slice() {
        [] => invert_grid_rho(r, conv),
        [i] => {
            let Segment::Tail(t) = &r.segments()[*i] else { unreachable!() };
            if t.negated() {
                return Ok(None);
            }
            let TailDescriptor::V { a, .. } = t.descriptor() else {
                return Ok(None);
            };
            let p = StructParams::new(&a);
            let post: Vec<Run> = r.segments()[i + 1..]
                .iter()
                .map(|s| match s {
                    Segment::Run(run) => run.clone(),
                    Segment::Tail(_) => unreachable!("single tail"),
                })
                .collect();
            let Some(param) = phi_inv(&p, &post) else {
                return Ok(None);
            };
            for n in -INVERT_SCAN - 1..=INVERT_SCAN {
                let pos = Position::Interval { a: a.clone(), n, t: param.clone() };
                let Ok(candidate) = rho_of_position(&pos, conv) else { continue };
                if candidate.eq_upto(r, EQ_CHECK_RUNS)? {
                    return Ok(Some(pos));
                }
            }
            Ok(None)
        }
        _ => Ok(None),
    }
}

/// Invert `Φ^a` on explicit runs after a `V(a)` tail.
fn phi_inv(p: &StructParams, post: &[Run]) -> Option<Number> {
    let mut t0 = p.a.tau().succ();
    let mut out: Vec<Run> = Vec::new();
    for r in post {
        match r.sign {
            Sign::Plus => {
                let e = single_eps_subscript(&r.len)?;
                let alpha = t0.left_sub(&OrdinalTerm::one().plus(&e)).ok()?;
                if alpha.is_zero() {
                    return None;
                }
                t0 = t0.plus(&alpha);
                out.push(Run::plus(alpha));
            }
            Sign::Minus => {
                let unit_exp = OrdinalTerm::eps(&t0.flat()).times(&OrdinalTerm::omega());
                let alpha = r.len.left_div_pow(&unit_exp).ok()?;
                if alpha.is_zero() {
                    return None;
                }
                out.push(Run::minus(alpha));
            }
        }
    }
    Number::from_runs(out).ok()
}

fn single_eps_subscript(len: &OrdinalTerm) -> Option<OrdinalTerm> {
    match len.addends() {
        [a] if a.coeff == 1u32.into() => match &a.head {
            crate::ord::Head::Eps(t) => Some(t.clone()),
            crate::ord::Head::Pow(_) => None,
        },
        _ => None,
    }
}

/// `ε_s ∔ 1` shape: subscript `s`.
fn eps_plus_one(len: &OrdinalTerm) -> Option<OrdinalTerm> {
    match len.addends() {
        [a, b]
            if a.coeff == 1u32.into()
                && b.coeff == 1u32.into()
                && b.head == crate::ord::Head::Pow(OrdinalTerm::zero()) =>
        {
            match &a.head {
                crate::ord::Head::Eps(t) => Some(t.clone()),
                crate::ord::Head::Pow(_) => None,
            }
        }
        _ => None,
    }
}

/// `ε_s ×̇ 2 ∔ 1` shape: subscript `s` (a `j = 0` tower merged with the final
/// ι-run).
fn double_eps_plus_one(len: &OrdinalTerm) -> Option<OrdinalTerm> {
    match len.addends() {
        [a, b]
            if a.coeff == 2u32.into()
                && b.coeff == 1u32.into()
                && b.head == crate::ord::Head::Pow(OrdinalTerm::zero()) =>
        {
            match &a.head {
                crate::ord::Head::Eps(t) => Some(t.clone()),
                crate::ord::Head::Pow(_) => None,
            }
        }
        _ => None,
    }
}

/// The final ι-run length solving `♭(τ0 ∔ α) = s`, if valid.
fn iota_run_from_subscript(tau0: &OrdinalTerm, s: &OrdinalTerm) -> Option<OrdinalTerm> {
    let alpha = tau0.left_sub(&OrdinalTerm::one().plus(s)).ok()?;
    (!alpha.is_zero()).then_some(alpha)
}

/// Invert `ρ` on a tail-free image: parse it as `ι_a` runs with an optional
/// trailing grid offset or exponent tower, and verify each candidate by
/// recomputation.
fn invert_grid_rho(r: &Number, conv: &Convention) -> Result<Option<Position>> {
    let runs = r.explicit_runs()?;
    let mut a_runs: Vec<Run> = Vec::new();
    let mut tau0 = OrdinalTerm::zero();
    let verify = |candidates: Vec<(Number, i64)>| -> Result<Option<Position>> {
        for (a, n) in candidates {
            if rho_grid(&a, n, conv).map(|v| &v == r).unwrap_or(false) {
                return Ok(Some(Position::Grid { a, n }));
            }
        }
        Ok(None)
    };
    for (idx, run) in runs.iter().enumerate() {
        let last = idx == runs.len() - 1;
        match run.sign {
            Sign::Plus => {
                if let Some(e) = single_eps_subscript(&run.len) {
                    if let Some(alpha) = iota_run_from_subscript(&tau0, &e) {
                        tau0 = tau0.plus(&alpha);
                        a_runs.push(Run::plus(alpha));
                        continue;
                    }
                }
                if !last {
                    return Ok(None);
                }
                let a_now = Number::from_runs(a_runs)?;
                let sigma_now = StructParams::new(&a_now).sigma;
                let shift = conv.exp_index_shift as i64;
                let mut candidates: Vec<(Number, i64)> = Vec::new();
                // Merged j = 0 tower: run length ς' ×̇ 2 ∔ 1 with ς' = ε_s.
                if let Some(s) = double_eps_plus_one(&run.len) {
                    if let Some(alpha) = iota_run_from_subscript(&tau0, &s) {
                        let a2 = a_now.concat(&Number::from_ordinal(&alpha))?;
                        candidates.push((a2, shift));
                    }
                }
                // Peel the tower ω^{ω^{…^{bottom}}}.
                let mut t = run.len.clone();
                for depth in 0..PEEL_LIMIT {
                    if t == sigma_now.succ() {
                        candidates.push((a_now.clone(), depth as i64 + shift));
                    }
                    if let Some(s) = eps_plus_one(&t) {
                        if let Some(alpha) = iota_run_from_subscript(&tau0, &s) {
                            let a2 = a_now.concat(&Number::from_ordinal(&alpha))?;
                            candidates.push((a2, depth as i64 + shift));
                        }
                    }
                    match t.addends() {
                        [a1] if a1.coeff == 1u32.into() => match &a1.head {
                            crate::ord::Head::Pow(e) if !e.is_zero() => t = e.clone(),
                            _ => break,
                        },
                        _ => break,
                    }
                }
                return verify(candidates);
            }
            Sign::Minus => {
                let (limit, fin) = run.len.split();
                if fin == 0u32.into() {
                    a_runs.push(Run::minus(limit.div_omega().map_err(|_| Error::DomainError(
                        "minus run is not an ι-image".into(),
                    ))?));
                    continue;
                }
                if !last {
                    return Ok(None);
                }
                let k = nat_to_i64(&fin)?;
                let mut candidates: Vec<(Number, i64)> = Vec::new();
                let a_plain = Number::from_runs(a_runs.clone())?;
                if limit.is_zero() {
                    candidates.push((a_plain, -k));
                } else if let Ok(alpha) = limit.div_omega() {
                    let mut with_run = a_runs.clone();
                    with_run.push(Run::minus(alpha));
                    candidates.push((Number::from_runs(with_run)?, -k));
                }
                return verify(candidates);
            }
        }
    }
    verify(vec![(Number::from_runs(a_runs)?, 0)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::map_v;

    fn n(s: &str) -> Number {
        s.parse().unwrap()
    }

    #[test]
    fn decompose_examples() {
        let d = |s: &str| la_decompose(&n(s)).unwrap();
        assert_eq!(d("0"), Position::Grid { a: Number::zero(), n: 0 });
        assert_eq!(d("[+3]"), Position::Grid { a: Number::zero(), n: 3 });
        assert_eq!(d("[-2]"), Position::Grid { a: Number::zero(), n: -2 });
        assert_eq!(d("[+w]"), Position::Grid { a: n("[+1]"), n: 0 });
        assert_eq!(d("[+w+2]"), Position::Grid { a: n("[+1]"), n: 2 });
        assert_eq!(d("[+w, -3]"), Position::Grid { a: n("[+1]"), n: -3 });
        assert_eq!(
            d("[+1, -1]"),
            Position::Interval { a: Number::zero(), n: -1, t: Number::zero() }
        );
        assert_eq!(
            d("[-1, +2]"),
            Position::Interval { a: Number::zero(), n: 0, t: n("[+1]") }
        );
        assert_eq!(
            d("[+w+1, -w]"),
            Position::Interval { a: n("[+1]"), n: -1, t: n("[-w]") }
        );
        assert_eq!(
            d("[+w, -1, +w]"),
            Position::Interval { a: n("[+1]"), n: 0, t: n("[+w]") }
        );
    }

    #[test]
    fn decompose_rebuild_roundtrip() {
        for z in
            ["0", "[+3]", "[-2]", "[+w]", "[+w+2]", "[+w, -3]", "[+1, -1]", "[-1, +2]",
             "[+w+1, -w]", "[+w, -1, +w]", "[+w^(2), -w, +5]", "[-w, +1, -1, +1]"]
        {
            let z = n(z);
            assert_eq!(la_rebuild(&la_decompose(&z).unwrap()).unwrap(), z, "roundtrip {z}");
        }
    }

    #[test]
    fn shift_examples() {
        assert_eq!(la_shift(&n("[+2]"), 1).unwrap(), n("[+3]"));
        assert_eq!(la_shift(&n("[+w]"), -1).unwrap(), n("[+w, -1]"));
        assert_eq!(la_shift(&n("[+1, -1]"), 1).unwrap(), n("[+2, -1]"));
        assert_eq!(la_shift(&n("[-1, +2]"), -1).unwrap(), n("[-2, +2]"));
        let z = n("[+w, -1, +w]");
        assert_eq!(la_shift(&la_shift(&z, 3).unwrap(), -3).unwrap(), z);
    }

    #[test]
    fn rho_grid_shifted_anchors() {
        let c = Convention::SHIFTED_EXP;
        assert_eq!(rho_grid(&Number::zero(), 0, &c).unwrap(), Number::zero());
        assert_eq!(rho_grid(&Number::zero(), 1, &c).unwrap(), n("[+1]"));
        assert_eq!(rho_grid(&Number::zero(), 2, &c).unwrap(), n("[+w]"));
        assert_eq!(rho_grid(&Number::zero(), 3, &c).unwrap(), n("[+w^(w)]"));
        assert_eq!(rho_grid(&Number::zero(), -2, &c).unwrap(), n("[-2]"));
        assert_eq!(rho_grid(&n("[+1]"), 0, &c).unwrap(), n("[+eps(0)]"));
        assert_eq!(rho_grid(&n("[+1]"), 1, &c).unwrap(), n("[+eps(0)*2+1]"));
    }

    #[test]
    fn rho_grid_verbatim_is_one_tower_higher() {
        let v = Convention::PAPER_VERBATIM;
        let s = Convention::SHIFTED_EXP;
        for m in 1..4i64 {
            assert_eq!(
                rho_grid(&Number::zero(), m, &v).unwrap(),
                rho_grid(&Number::zero(), m + 1, &s).unwrap()
            );
        }
    }

    #[test]
    fn lambda_shifted_anchors() {
        let c = Convention::SHIFTED_EXP;
        // λ_0 = ω, λ_1 = exp ω, λ_{−1} = log ω.
        assert_eq!(la_lambda(&Number::zero(), &c).unwrap(), n("[+w]"));
        assert_eq!(la_lambda(&n("[+1]"), &c).unwrap(), n("[+w^(w)]"));
        assert_eq!(la_lambda(&n("[-1]"), &c).unwrap(), n("[+w, -w^(3)]"));
        // κ-numbers sit at θ_a: λ_{θ_a} = κ_a.
        for a in ["0", "[+1]", "[-1]"] {
            let a = n(a);
            assert_eq!(
                la_lambda(&theta(&a).unwrap(), &c).unwrap(),
                crate::maps::map_kappa(&a).unwrap(),
                "kappa anchor at a = {a}"
            );
        }
    }

    #[test]
    fn e_domain() {
        let c = Convention::SHIFTED_EXP;
        assert!(la_e(&n("[+w]"), &c).is_ok());
        assert!(la_e(&n("[+1]"), &c).is_err());
        assert!(la_e(&n("[-w]"), &c).is_err());
        assert!(la_e(&n("[+eps(0)]"), &c).is_err());
    }

    #[test]
    fn h_piece_example() {
        // h(ρ_{θ−1} ∔ 1) = ω̇^{ρ_{θ−1}} ∔ (−1) at a = 0, n = 0.
        let c = Convention::SHIFTED_EXP;
        let x = n("[-1, +1]");
        let got = la_h_piece(&Number::zero(), 0, &x, &c).unwrap();
        assert_eq!(got, n("[+1, -w+1]").neg().neg());
        assert_eq!(got, n("[+1, -w, -1]"));
    }

    #[test]
    fn g_piece_example() {
        // g(ω̇^{ρ_θ} ∔ (−1)) = ρ_θ ∔ 1 at a = 0, n = 0.
        let c = Convention::SHIFTED_EXP;
        let x = n("[+1, -1]");
        assert_eq!(la_g_piece(&Number::zero(), 0, &x, &c).unwrap(), n("[+1]"));
        let miss = la_g_piece(&Number::zero(), 0, &n("[+w]"), &c);
        assert!(matches!(miss, Err(Error::PatternMismatch(_))));
    }

    #[test]
    fn is_log_atomic_yes() {
        // The guarded infix keeps interval ρ-values injective; under the
        // plain reading different interval positions collide by absorption.
        let c = Convention::SHIFTED_GUARDED;
        for z in ["0", "[+1]", "[-1]", "[+w]", "[+2]", "[+w, -1]", "[+1, -1]", "[-1, +2]"] {
            let z = n(z);
            let lam = la_lambda(&z, &c).unwrap();
            match la_is_log_atomic(&lam, &c) {
                LogAtomicCheck::Yes { index } => assert_eq!(index, z, "index of λ_{z}"),
                other => panic!("λ_{z} = {lam} not recognized: {other:?}"),
            }
        }
    }

    #[test]
    fn is_log_atomic_no() {
        let c = Convention::SHIFTED_GUARDED;
        for x in ["[+3]", "[+1, -1]", "[+w, -1]", "[+w^(w), +1]"] {
            assert_eq!(la_is_log_atomic(&n(x), &c), LogAtomicCheck::No, "{x}");
        }
    }

    #[test]
    fn interval_rho_has_v_tail() {
        let c = Convention::SHIFTED_EXP;
        // ρ of the piece above θ − 1 at t = 0: ρ_{θ−1} ∔ 1 ∔ (−δ) ∔ V(0).
        let rho = la_rho(&n("[-1, +1]"), &c).unwrap();
        let v = map_v(&StructParams::new(&Number::zero())).unwrap();
        assert_eq!(rho, n("[-1, +1, -w]").concat(&v).unwrap());
        // Under the plain right infix, ρ of the piece below θ at t = 0 is
        // V(0) itself.
        assert_eq!(la_rho(&n("[+1, -1]"), &c).unwrap(), v);
    }

    #[test]
    fn interval_param_examples() {
        assert_eq!(
            la_interval_param(&Number::zero(), -1, &n("[+1, -1, +w]")).unwrap(),
            n("[+w]")
        );
        assert!(la_interval_param(&Number::zero(), -1, &n("[+2]")).is_err());
    }
}
