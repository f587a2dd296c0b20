//! Surreal numbers as transfinite sign sequences.
//!
//! A [`Number`] is a finite list of [`Segment`]s: explicit sign runs plus
//! symbolic lazily-expanded tails. Every number produced by the implemented
//! parametrisation formulas fits this shape; arbitrary ω-alternation numbers
//! (such as 2/3) are deliberately not representable.
//!
//! Order is lexicographic with 0-padding; simplicity `x ⊑ y` is the
//! initial-segment order. Comparisons against symbolic tails expand runs
//! lazily under a global budget: exceeding the budget is a reported error
//! ([`Error::BudgetExceeded`]), never a wrong answer.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ord::OrdinalTerm;

/// Default per-tail run expansion budget.
pub const DEFAULT_RUN_BUDGET: usize = 64;

static RUN_BUDGET: AtomicUsize = AtomicUsize::new(DEFAULT_RUN_BUDGET);

/// Current per-tail run expansion budget.
pub fn run_budget() -> usize {
    RUN_BUDGET.load(AtomicOrdering::Relaxed)
}

/// Override the per-tail run expansion budget (SURREAL_BUDGET in the CLI).
pub fn set_run_budget(n: usize) {
    RUN_BUDGET.store(n.max(1), AtomicOrdering::Relaxed);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
}

/// A maximal block of equal signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub sign: Sign,
    pub len: OrdinalTerm,
}

impl Run {
    pub fn new(sign: Sign, len: OrdinalTerm) -> Run {
        Run { sign, len }
    }

    pub fn plus(len: OrdinalTerm) -> Run {
        Run::new(Sign::Plus, len)
    }

    pub fn minus(len: OrdinalTerm) -> Run {
        Run::new(Sign::Minus, len)
    }

    fn flip(&self) -> Run {
        Run { sign: self.sign.flip(), len: self.len.clone() }
    }
}

/// What a tail denotes, for printing, serialization, and equality keys.
#[derive(Debug, Clone)]
pub enum TailDescriptor {
    /// The fixed point `V(a) = Ξ_{V_a}^ω 0`.
    V { a: Number, sigma: OrdinalTerm, delta: OrdinalTerm },
    /// ω-map image of an inner number's run stream, seeded at plus-count `start_tau`.
    MoImage { inner: Number, start_tau: OrdinalTerm },
}

impl TailDescriptor {
    fn key_text(&self) -> String {
        match self {
            // V(a) depends on a only through δ_a, so equality keys on δ.
            TailDescriptor::V { delta, .. } => format!("V(d={delta})"),
            TailDescriptor::MoImage { inner, start_tau } => {
                format!("Mo(inner={inner}, t0={start_tau})")
            }
        }
    }
}

/// A lazily expanded alternating run stream with known ordinal totals.
///
/// `run(i)` is the `i`-th run (ℕ-indexed; the stream always has order type
/// ω). The totals are the ordinal length of the whole stream and the order
/// types of its +1 and −1 position sets.
pub trait RunStream: Send + Sync {
    fn run(&self, i: usize) -> Result<Run>;
    fn total_len(&self) -> OrdinalTerm;
    fn total_plus(&self) -> OrdinalTerm;
    fn total_minus(&self) -> OrdinalTerm;
    fn first_sign(&self) -> Sign;
    fn descriptor(&self) -> TailDescriptor;
}

/// A symbolic tail segment: a run stream, an optional explicit lead length
/// merged into its first run, and a negation flag.
#[derive(Clone)]
pub struct Tail {
    stream: Arc<dyn RunStream>,
    negated: bool,
    lead: Option<OrdinalTerm>,
    key: Arc<str>,
}

impl fmt::Debug for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tail({})", self.key)
    }
}

impl PartialEq for Tail {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Tail {}

impl Tail {
    pub fn new(stream: Arc<dyn RunStream>) -> Tail {
        Self::build(stream, false, None)
    }

    fn build(stream: Arc<dyn RunStream>, negated: bool, lead: Option<OrdinalTerm>) -> Tail {
        let mut key = String::new();
        if negated {
            key.push('-');
        }
        if let Some(l) = &lead {
            key.push_str(&format!("lead({l})+"));
        }
        key.push_str(&stream.descriptor().key_text());
        Tail { stream, negated, lead, key: key.into() }
    }

    pub fn descriptor(&self) -> TailDescriptor {
        self.stream.descriptor()
    }

    pub fn negated(&self) -> bool {
        self.negated
    }

    pub fn lead(&self) -> Option<&OrdinalTerm> {
        self.lead.as_ref()
    }

    pub fn eq_key(&self) -> &str {
        &self.key
    }

    fn negate(&self) -> Tail {
        Self::build(self.stream.clone(), !self.negated, self.lead.clone())
    }

    /// Sign of the first position, accounting for negation.
    pub fn first_sign(&self) -> Sign {
        let s = self.stream.first_sign();
        if self.negated {
            s.flip()
        } else {
            s
        }
    }

    /// The `i`-th run with lead merge and negation applied.
    pub fn run(&self, i: usize) -> Result<Run> {
        let mut r = self.stream.run(i)?;
        if self.negated {
            r = r.flip();
        }
        if i == 0 {
            if let Some(l) = &self.lead {
                r.len = l.plus(&r.len);
            }
        }
        Ok(r)
    }

    pub fn total_len(&self) -> OrdinalTerm {
        match &self.lead {
            Some(l) => l.plus(&self.stream.total_len()),
            None => self.stream.total_len(),
        }
    }

    /// Order type of the +1 positions of this tail.
    pub fn total_tau(&self) -> OrdinalTerm {
        let base = if self.negated { self.stream.total_minus() } else { self.stream.total_plus() };
        match (&self.lead, self.first_sign()) {
            (Some(l), Sign::Plus) => l.plus(&base),
            _ => base,
        }
    }

    /// Merge an explicit same-sign run of length `extra` placed before this
    /// tail into its first run. Fails if the first run cannot absorb it into
    /// a representable shape change (it always can: the length is just
    /// `extra ∔ run₀`).
    fn with_lead(&self, extra: &OrdinalTerm) -> Result<Tail> {
        let lead = match &self.lead {
            Some(l) => extra.plus(l),
            None => extra.clone(),
        };
        // Canonical form: drop the lead when the first run absorbs it.
        let r0 = self.stream.run(0)?;
        let lead = if lead.plus(&r0.len) == r0.len { None } else { Some(lead) };
        Ok(Self::build(self.stream.clone(), self.negated, lead))
    }

    /// Strip one leading position (the tail's first sign must be Plus and its
    /// first run must absorb the removal).
    fn strip_one_plus(&self) -> Result<Tail> {
        debug_assert_eq!(self.first_sign(), Sign::Plus);
        match &self.lead {
            Some(l) => {
                let rest = OrdinalTerm::one().left_sub(l).expect("lead ≥ 1");
                let lead = if rest.is_zero() { None } else { Some(rest) };
                // Re-canonicalize through with_lead semantics.
                let r0 = self.stream.run(0)?;
                let lead = match lead {
                    Some(l2) if l2.plus(&r0.len) == r0.len => None,
                    other => other,
                };
                Ok(Self::build(self.stream.clone(), self.negated, lead))
            }
            None => {
                let r0 = self.stream.run(0)?;
                if OrdinalTerm::one().plus(&r0.len) == r0.len {
                    Ok(self.clone())
                } else {
                    Err(Error::UnsupportedTail("cannot strip a plus from this tail".into()))
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Run(Run),
    Tail(Tail),
}

impl Segment {
    pub fn len(&self) -> OrdinalTerm {
        match self {
            Segment::Run(r) => r.len.clone(),
            Segment::Tail(t) => t.total_len(),
        }
    }

    fn tau(&self) -> OrdinalTerm {
        match self {
            Segment::Run(r) => match r.sign {
                Sign::Plus => r.len.clone(),
                Sign::Minus => OrdinalTerm::zero(),
            },
            Segment::Tail(t) => t.total_tau(),
        }
    }

    fn first_sign(&self) -> Sign {
        match self {
            Segment::Run(r) => r.sign,
            Segment::Tail(t) => t.first_sign(),
        }
    }
}

/// A surreal number in normal form: alternating explicit runs and complete
/// symbolic tails.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Number {
    segments: Vec<Segment>,
}

/// A number or `−∞` (the value of `♭z` for `z ≤ 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignedNumber {
    NegInf,
    Num(Number),
}

impl Number {
    pub fn zero() -> Number {
        Number::default()
    }

    /// The surreal image `[+α]` of an ordinal (0 for `α = 0`).
    pub fn from_ordinal(alpha: &OrdinalTerm) -> Number {
        if alpha.is_zero() {
            Number::zero()
        } else {
            Number { segments: vec![Segment::Run(Run::plus(alpha.clone()))] }
        }
    }

    pub fn from_int(n: i64) -> Number {
        match n.cmp(&0) {
            Ordering::Equal => Number::zero(),
            Ordering::Greater => Number::from_ordinal(&OrdinalTerm::nat(n as u64)),
            Ordering::Less => {
                Number { segments: vec![Segment::Run(Run::minus(OrdinalTerm::nat(n.unsigned_abs())))] }
            }
        }
    }

    /// Normalize a raw segment list: merge adjacent same-sign runs, fold
    /// same-sign runs preceding a tail into the tail's first run, reject
    /// zero-length runs.
    pub fn normalize(raw: Vec<Segment>) -> Result<Number> {
        let mut out: Vec<Segment> = Vec::with_capacity(raw.len());
        for seg in raw {
            match seg {
                Segment::Run(r) => {
                    if r.len.is_zero() {
                        return Err(Error::InvalidRun);
                    }
                    match out.last_mut() {
                        Some(Segment::Run(prev)) if prev.sign == r.sign => {
                            prev.len = prev.len.plus(&r.len);
                        }
                        _ => out.push(Segment::Run(r)),
                    }
                }
                Segment::Tail(t) => {
                    match out.last() {
                        Some(Segment::Run(prev)) if prev.sign == t.first_sign() => {
                            let merged = t.with_lead(&prev.len.clone())?;
                            out.pop();
                            out.push(Segment::Tail(merged));
                        }
                        _ => out.push(Segment::Tail(t)),
                    }
                }
            }
        }
        Ok(Number { segments: out })
    }

    pub fn from_runs(runs: Vec<Run>) -> Result<Number> {
        Self::normalize(runs.into_iter().map(Segment::Run).collect())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_zero(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn is_tail_free(&self) -> bool {
        self.segments.iter().all(|s| matches!(s, Segment::Run(_)))
    }

    /// The explicit runs; errors when the number contains symbolic tails.
    pub fn explicit_runs(&self) -> Result<Vec<Run>> {
        self.segments
            .iter()
            .map(|s| match s {
                Segment::Run(r) => Ok(r.clone()),
                Segment::Tail(t) => {
                    Err(Error::UnsupportedTail(format!("symbolic tail {}", t.eq_key())))
                }
            })
            .collect()
    }

    /// Ordinal length ℓ.
    pub fn len(&self) -> OrdinalTerm {
        self.segments
            .iter()
            .fold(OrdinalTerm::zero(), |acc, s| acc.plus(&s.len()))
    }

    /// Order type τ of the set of +1 positions.
    pub fn tau(&self) -> OrdinalTerm {
        self.segments
            .iter()
            .fold(OrdinalTerm::zero(), |acc, s| acc.plus(&s.tau()))
    }

    fn first_sign(&self) -> Option<Sign> {
        self.segments.first().map(|s| s.first_sign())
    }

    /// Comparison against zero needs no expansion.
    pub fn sign_of(&self) -> Ordering {
        match self.first_sign() {
            None => Ordering::Equal,
            Some(Sign::Plus) => Ordering::Greater,
            Some(Sign::Minus) => Ordering::Less,
        }
    }

    /// The sign at position `α` (0 when `α ≥ ℓ`).
    pub fn sign_at(&self, alpha: &OrdinalTerm) -> Result<i8> {
        let mut alpha = alpha.clone();
        for seg in &self.segments {
            let seg_len = seg.len();
            if alpha < seg_len {
                match seg {
                    Segment::Run(r) => return Ok(r.sign.as_i8()),
                    Segment::Tail(t) => {
                        let budget = run_budget();
                        for i in 0..budget {
                            let r = t.run(i)?;
                            if alpha < r.len {
                                return Ok(r.sign.as_i8());
                            }
                            alpha = r.len.left_sub(&alpha).expect("α ≥ run length");
                        }
                        return Err(Error::BudgetExceeded(budget));
                    }
                }
            }
            alpha = seg_len.left_sub(&alpha).expect("α ≥ segment length");
        }
        Ok(0)
    }

    /// The initial segment of length `min(α, ℓ)`.
    pub fn restrict(&self, alpha: &OrdinalTerm) -> Result<Number> {
        let mut rem = alpha.clone();
        let mut out: Vec<Segment> = Vec::new();
        for seg in &self.segments {
            if rem.is_zero() {
                break;
            }
            let seg_len = seg.len();
            if seg_len <= rem {
                out.push(seg.clone());
                rem = seg_len.left_sub(&rem).expect("len ≤ rem");
                continue;
            }
            match seg {
                Segment::Run(r) => {
                    out.push(Segment::Run(Run::new(r.sign, rem)));
                }
                Segment::Tail(t) => {
                    let budget = run_budget();
                    let mut i = 0;
                    loop {
                        if i >= budget {
                            return Err(Error::BudgetExceeded(budget));
                        }
                        let r = t.run(i)?;
                        if r.len < rem {
                            rem = r.len.left_sub(&rem).expect("run < rem");
                            out.push(Segment::Run(r));
                        } else {
                            if !rem.is_zero() {
                                out.push(Segment::Run(Run::new(r.sign, rem)));
                            }
                            break;
                        }
                        i += 1;
                    }
                }
            }
            break;
        }
        Number::normalize(out)
    }

    /// Lexicographic comparison with 0-padding.
    pub fn cmp_num(&self, other: &Number) -> Result<Ordering> {
        let common = self
            .segments
            .iter()
            .zip(other.segments.iter())
            .take_while(|(a, b)| a == b)
            .count();
        let mut cx = RunCursor::new(&self.segments[common..]);
        let mut cy = RunCursor::new(&other.segments[common..]);
        let mut rx = cx.next_run()?;
        let mut ry = cy.next_run()?;
        loop {
            match (&rx, &ry) {
                (None, None) => return Ok(Ordering::Equal),
                (Some(r), None) => {
                    return Ok(if r.sign == Sign::Plus { Ordering::Greater } else { Ordering::Less })
                }
                (None, Some(r)) => {
                    return Ok(if r.sign == Sign::Plus { Ordering::Less } else { Ordering::Greater })
                }
                (Some(a), Some(b)) => {
                    if a.sign != b.sign {
                        return Ok(if a.sign == Sign::Plus {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        });
                    }
                    match a.len.cmp(&b.len) {
                        Ordering::Equal => {
                            rx = cx.next_run()?;
                            ry = cy.next_run()?;
                        }
                        // The longer run's owner continues with this sign
                        // where the other switches or ends.
                        Ordering::Less => {
                            return Ok(if a.sign == Sign::Plus {
                                Ordering::Less
                            } else {
                                Ordering::Greater
                            })
                        }
                        Ordering::Greater => {
                            return Ok(if a.sign == Sign::Plus {
                                Ordering::Greater
                            } else {
                                Ordering::Less
                            })
                        }
                    }
                }
            }
        }
    }

    /// Simplicity: `self ⊑ other` (initial segment).
    pub fn is_initial(&self, other: &Number) -> Result<bool> {
        let common = self
            .segments
            .iter()
            .zip(other.segments.iter())
            .take_while(|(a, b)| a == b)
            .count();
        let mut cx = RunCursor::new(&self.segments[common..]);
        let mut cy = RunCursor::new(&other.segments[common..]);
        let mut rx = cx.next_run()?;
        let mut ry = cy.next_run()?;
        loop {
            match (&rx, &ry) {
                (None, _) => return Ok(true),
                (Some(_), None) => return Ok(false),
                (Some(a), Some(b)) => {
                    if a.sign != b.sign {
                        return Ok(false);
                    }
                    match a.len.cmp(&b.len) {
                        Ordering::Equal => {
                            rx = cx.next_run()?;
                            ry = cy.next_run()?;
                        }
                        Ordering::Less => return Ok(cx.next_run()?.is_none()),
                        Ordering::Greater => return Ok(false),
                    }
                }
            }
        }
    }

    /// Concatenation `self ∔ other`.
    pub fn concat(&self, other: &Number) -> Result<Number> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if let Some(Segment::Tail(t)) = self.segments.last() {
            if matches!(t.descriptor(), TailDescriptor::MoImage { .. }) {
                return Err(Error::UnsupportedConcat(
                    "appending after an ω-map image tail".into(),
                ));
            }
        }
        let mut segs = self.segments.clone();
        segs.extend(other.segments.iter().cloned());
        Number::normalize(segs)
    }

    pub fn neg(&self) -> Number {
        let segments = self
            .segments
            .iter()
            .map(|s| match s {
                Segment::Run(r) => Segment::Run(r.flip()),
                Segment::Tail(t) => Segment::Tail(t.negate()),
            })
            .collect();
        Number { segments }
    }

    /// Transfinite repetition `α ×̇ self`: every sign replaced by α copies.
    pub fn scale_left(&self, alpha: &OrdinalTerm) -> Result<Number> {
        if alpha.is_zero() {
            return Err(Error::DomainError("scale factor must be positive".into()));
        }
        let runs = self.explicit_runs().map_err(|_| Error::UnsupportedScale)?;
        Number::from_runs(
            runs.into_iter()
                .map(|r| Run::new(r.sign, alpha.times(&r.len)))
                .collect(),
        )
    }

    /// Finite repetition `self ×̇ n` (`−self` repeated for negative n).
    pub fn repeat(&self, n: i64) -> Result<Number> {
        if !self.is_tail_free() {
            return Err(Error::UnsupportedScale);
        }
        let unit = if n < 0 { self.neg() } else { self.clone() };
        let mut segs = Vec::new();
        for _ in 0..n.unsigned_abs() {
            segs.extend(unit.segments.iter().cloned());
        }
        Number::normalize(segs)
    }

    /// `♭self`: strip one leading plus; `−∞` when `self ≤ 0`.
    pub fn flat(&self) -> Result<SignedNumber> {
        if self.sign_of() != Ordering::Greater {
            return Ok(SignedNumber::NegInf);
        }
        let mut segs = self.segments.clone();
        match &mut segs[0] {
            Segment::Run(r) => {
                if r.len == OrdinalTerm::one() {
                    segs.remove(0);
                } else {
                    r.len = OrdinalTerm::one().left_sub(&r.len).expect("len > 1");
                }
            }
            Segment::Tail(t) => {
                let stripped = t.strip_one_plus()?;
                segs[0] = Segment::Tail(stripped);
            }
        }
        Ok(SignedNumber::Num(Number { segments: segs }))
    }

    /// Ordinal value of a pure plus-sequence number.
    pub fn as_ordinal(&self) -> Result<OrdinalTerm> {
        match self.segments.as_slice() {
            [] => Ok(OrdinalTerm::zero()),
            [Segment::Run(r)] if r.sign == Sign::Plus => Ok(r.len.clone()),
            _ => Err(Error::NotAnOrdinal),
        }
    }

    /// The suffix of `self` after the initial segment `prefix`, when `prefix`
    /// is a tail-free initial segment aligned with the explicit part of
    /// `self`; `None` when `prefix` is not such an initial segment.
    pub fn strip_prefix(&self, prefix: &Number) -> Result<Option<Number>> {
        let pruns = prefix.explicit_runs()?;
        let mut seg_idx = 0usize;
        // Remaining length of the current (partially consumed) run segment.
        let mut current: Option<Run> = None;
        for pr in &pruns {
            let base = match current.take() {
                Some(r) => r,
                None => {
                    let Some(seg) = self.segments.get(seg_idx) else {
                        return Ok(None);
                    };
                    seg_idx += 1;
                    match seg {
                        Segment::Run(r) => r.clone(),
                        Segment::Tail(_) => return Ok(None),
                    }
                }
            };
            if base.sign != pr.sign {
                return Ok(None);
            }
            match pr.len.cmp(&base.len) {
                Ordering::Equal => {}
                Ordering::Less => {
                    let rest = pr.len.left_sub(&base.len).expect("pr < base");
                    current = Some(Run::new(base.sign, rest));
                }
                Ordering::Greater => return Ok(None),
            }
        }
        let mut segs: Vec<Segment> = Vec::new();
        if let Some(r) = current {
            segs.push(Segment::Run(r));
        }
        segs.extend(self.segments[seg_idx..].iter().cloned());
        Ok(Some(Number::normalize(segs)?))
    }

    /// The ⊑-minimal number strictly between `a` and `b`.
    pub fn simplest_between(a: &Number, b: &Number) -> Result<Number> {
        if a.cmp_num(b)? != Ordering::Less {
            return Err(Error::DomainError("simplest_between requires a < b".into()));
        }
        let mut x = Number::zero();
        // Each round either finishes or extends x by one run of the answer;
        // the answer has at most runs(a) + runs(b) + 2 runs.
        let max_rounds = 2 * (a.segments.len() + b.segments.len()) + 8;
        for _ in 0..max_rounds {
            let above_a = a.cmp_num(&x)? == Ordering::Less;
            if above_a && x.cmp_num(b)? == Ordering::Less {
                return Ok(x);
            }
            if !above_a {
                // x ≤ a: append the shortest plus run that passes a.
                let rest = a
                    .strip_prefix(&x)?
                    .ok_or_else(|| Error::DomainError("simplest_between lost alignment".into()))?;
                let step = match rest.segments.as_slice() {
                    [] => OrdinalTerm::one(),
                    [Segment::Run(r)] if r.sign == Sign::Plus => r.len.succ(),
                    [Segment::Run(r), ..] if r.sign == Sign::Plus => r.len.clone(),
                    _ => {
                        return Err(Error::DomainError("simplest_between lost alignment".into()))
                    }
                };
                x = x.concat(&Number::from_ordinal(&step))?;
            } else {
                // x ≥ b: append the shortest minus run that passes b.
                let rest = b
                    .strip_prefix(&x)?
                    .ok_or_else(|| Error::DomainError("simplest_between lost alignment".into()))?;
                let step = match rest.segments.as_slice() {
                    [] => OrdinalTerm::one(),
                    [Segment::Run(r)] if r.sign == Sign::Minus => r.len.succ(),
                    [Segment::Run(r), ..] if r.sign == Sign::Minus => r.len.clone(),
                    _ => {
                        return Err(Error::DomainError("simplest_between lost alignment".into()))
                    }
                };
                x = x.concat(&Number::from_ordinal(&step).neg())?;
            }
        }
        Err(Error::DomainError("simplest_between did not converge".into()))
    }

    /// Conway value of a finite-length number as a dyadic rational.
    pub fn dyadic_value(&self) -> Result<BigRational> {
        let runs = self.explicit_runs().map_err(|_| Error::NotFinite)?;
        let mut signs: Vec<i8> = Vec::new();
        for r in &runs {
            let n = r.len.as_nat().ok_or(Error::NotFinite)?;
            let n: u64 = (&n).try_into().map_err(|_| Error::NotFinite)?;
            for _ in 0..n {
                signs.push(r.sign.as_i8());
            }
        }
        if signs.is_empty() {
            return Ok(BigRational::zero());
        }
        let first = signs[0];
        let lead = signs.iter().take_while(|&&s| s == first).count();
        let mut value = BigRational::from_integer(BigInt::from(first as i64 * lead as i64));
        let mut step = BigRational::new(BigInt::one(), BigInt::from(2));
        for &s in &signs[lead..] {
            let delta = &step * BigRational::from_integer(BigInt::from(s as i64));
            value += delta;
            step /= BigRational::from_integer(BigInt::from(2));
        }
        Ok(value)
    }

    /// Equality check truncated at `k` runs: exact segment equality, or
    /// agreement of ℓ, τ, and the first `k` runs. Used for identities whose
    /// sides carry symbolic tails built along different routes.
    pub fn eq_upto(&self, other: &Number, k: usize) -> Result<bool> {
        if self == other {
            return Ok(true);
        }
        if self.len() != other.len() || self.tau() != other.tau() {
            return Ok(false);
        }
        let mut cx = RunCursor::new(&self.segments);
        let mut cy = RunCursor::new(&other.segments);
        for _ in 0..k {
            match (cx.next_run()?, cy.next_run()?) {
                (None, None) => return Ok(true),
                (Some(a), Some(b)) if a == b => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// JSON rendering following the published schema.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let segments: Vec<serde_json::Value> = self
            .segments
            .iter()
            .map(|s| match s {
                Segment::Run(r) => json!({
                    "run": {"sign": r.sign.as_i8(), "len": r.len.to_string()}
                }),
                Segment::Tail(t) => {
                    let mut tail = match t.descriptor() {
                        TailDescriptor::V { a, sigma, delta } => json!({
                            "kind": "V",
                            "a": a.to_string(),
                            "sigma": sigma.to_string(),
                            "delta": delta.to_string(),
                        }),
                        TailDescriptor::MoImage { inner, start_tau } => json!({
                            "kind": "MoImage",
                            "inner": inner.to_string(),
                            "start_tau": start_tau.to_string(),
                        }),
                    };
                    let obj = tail.as_object_mut().expect("tail object");
                    if t.negated() {
                        obj.insert("negated".into(), json!(true));
                    }
                    if let Some(l) = t.lead() {
                        obj.insert("lead".into(), json!(l.to_string()));
                    }
                    json!({"tail": tail})
                }
            })
            .collect();
        json!({
            "segments": segments,
            "len": self.len().to_string(),
            "tau": self.tau().to_string(),
        })
    }
}

/// Sequential run iteration over a segment list. A tail is never exited: its
/// runs have order type ω, so anything after it is unreachable run-by-run.
pub struct RunCursor<'a> {
    segments: &'a [Segment],
    idx: usize,
    tail_i: usize,
    budget: usize,
}

impl<'a> RunCursor<'a> {
    pub fn new(segments: &'a [Segment]) -> RunCursor<'a> {
        RunCursor { segments, idx: 0, tail_i: 0, budget: run_budget() }
    }

    pub fn next_run(&mut self) -> Result<Option<Run>> {
        match self.segments.get(self.idx) {
            None => Ok(None),
            Some(Segment::Run(r)) => {
                self.idx += 1;
                Ok(Some(r.clone()))
            }
            Some(Segment::Tail(t)) => {
                if self.tail_i >= self.budget {
                    return Err(Error::BudgetExceeded(self.budget));
                }
                let r = t.run(self.tail_i)?;
                self.tail_i += 1;
                Ok(Some(r))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Sign::Plus { '+' } else { '-' })
    }
}

impl fmt::Display for SignedNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedNumber::NegInf => write!(f, "-inf"),
            SignedNumber::Num(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return write!(f, "0");
        }
        write!(f, "[")?;
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match seg {
                Segment::Run(r) => {
                    let sign = if r.sign == Sign::Plus { '+' } else { '-' };
                    write!(f, "{sign}{}", r.len)?;
                }
                Segment::Tail(t) => {
                    if t.negated() {
                        write!(f, "-")?;
                    }
                    if let Some(l) = t.lead() {
                        write!(f, "lead({l})+")?;
                    }
                    match t.descriptor() {
                        TailDescriptor::V { a, .. } => write!(f, "V(a={a})...")?,
                        TailDescriptor::MoImage { inner, start_tau } => {
                            write!(f, "Mo(inner={inner}, t0={start_tau})...")?
                        }
                    }
                }
            }
        }
        write!(f, "]")
    }
}

impl FromStr for Number {
    type Err = Error;

    /// Parses the run-literal form `[+L, -L, ...]`, `[]`, or `0`. Symbolic
    /// tails are not parsed back.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        if text == "0" {
            return Ok(Number::zero());
        }
        let inner = text
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::parse(1, 1, "expected '0' or a run literal '[+L, -L, ...]'"))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Number::zero());
        }
        let mut runs = Vec::new();
        for item in inner.split(',') {
            let item = item.trim();
            let (sign, rest) = match item.chars().next() {
                Some('+') => (Sign::Plus, &item[1..]),
                Some('-') => (Sign::Minus, &item[1..]),
                _ => return Err(Error::parse(1, 1, format!("run {item:?} must start with '+' or '-'"))),
            };
            let len: OrdinalTerm = rest.trim().parse()?;
            if len.is_zero() {
                return Err(Error::InvalidRun);
            }
            runs.push(Run::new(sign, len));
        }
        Number::from_runs(runs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Number {
        s.parse().unwrap()
    }

    fn o(s: &str) -> OrdinalTerm {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(n("[+1, +1]"), n("[+2]"));
        assert_eq!(n("[+1, -1, -w]"), n("[+1, -w]"));
        assert_eq!(n("[]"), Number::zero());
        assert!(Number::from_runs(vec![Run::plus(OrdinalTerm::zero())]).is_err());
    }

    #[test]
    fn sign_at_examples() {
        assert_eq!(n("[+w, -1]").sign_at(&o("w")).unwrap(), -1);
        assert_eq!(n("[+w, -1]").sign_at(&o("w+1")).unwrap(), 0);
        assert_eq!(n("[+1, -w]").sign_at(&o("3")).unwrap(), -1);
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(n("[+w, -w]").restrict(&o("w")).unwrap(), n("[+w]"));
        assert_eq!(n("[+1]").restrict(&o("0")).unwrap(), Number::zero());
        assert_eq!(n("[+w, -w]").restrict(&o("w+2")).unwrap(), n("[+w, -2]"));
        let x = n("[+w, -w^(3), +w^(w)]");
        assert_eq!(x.restrict(&x.len()).unwrap(), x);
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(n("[+1]").cmp_num(&n("[+1, -1]")).unwrap(), Ordering::Greater);
        assert_eq!(Number::zero().cmp_num(&n("[-1]")).unwrap(), Ordering::Greater);
        assert_eq!(n("[+w]").cmp_num(&n("[+w, +1]")).unwrap(), Ordering::Less);
        assert_eq!(n("[+w, -1]").cmp_num(&n("[+w, -2]")).unwrap(), Ordering::Greater);
        assert_eq!(n("[-1, +1]").cmp_num(&n("[-1]")).unwrap(), Ordering::Greater);
    }

    #[test]
    fn is_initial_examples() {
        assert!(n("[+w]").is_initial(&n("[+w, -1]")).unwrap());
        assert!(!n("[+1, -1]").is_initial(&n("[+1]")).unwrap());
        assert!(Number::zero().is_initial(&n("[-w]")).unwrap());
        assert!(n("[+2]").is_initial(&n("[+w]")).unwrap());
        assert!(!n("[+w]").is_initial(&n("[+2]")).unwrap());
    }

    #[test]
    fn concat_examples() {
        assert_eq!(n("[+w]").concat(&n("[-1]")).unwrap(), n("[+w, -1]"));
        let x = n("[+w, -w^(2)]");
        assert_eq!(x.concat(&Number::zero()).unwrap(), x);
        assert_eq!(n("[+1, -1]").concat(&n("[-w]")).unwrap(), n("[+1, -w]"));
        assert_eq!(
            n("[+w]").concat(&n("[-1]")).unwrap().len(),
            n("[+w]").len().plus(&n("[-1]").len())
        );
    }

    #[test]
    fn neg_scale_repeat_examples() {
        assert_eq!(n("[+1, -w]").neg(), n("[-1, +w]"));
        assert_eq!(Number::zero().neg(), Number::zero());
        assert_eq!(n("[+1, -1]").scale_left(&o("w")).unwrap(), n("[+w, -w]"));
        assert_eq!(n("[+2]").scale_left(&o("w")).unwrap(), n("[+w*2]"));
        assert_eq!(n("[+1, -1]").repeat(2).unwrap(), n("[+1, -1, +1, -1]"));
        assert_eq!(n("[+1]").repeat(-1).unwrap(), n("[-1]"));
        assert_eq!(n("[+1]").repeat(0).unwrap(), Number::zero());
    }

    #[test]
    fn tau_flat_examples() {
        assert_eq!(n("[+w, -1, +2]").tau(), o("w+2"));
        assert_eq!(n("[+2]").flat().unwrap(), SignedNumber::Num(n("[+1]")));
        assert_eq!(n("[-1]").flat().unwrap(), SignedNumber::NegInf);
        assert_eq!(Number::zero().flat().unwrap(), SignedNumber::NegInf);
        assert_eq!(n("[+w]").flat().unwrap(), SignedNumber::Num(n("[+w]")));
        assert_eq!(n("[+1, -1]").flat().unwrap(), SignedNumber::Num(n("[-1]")));
    }

    #[test]
    fn ordinal_bridge_examples() {
        assert_eq!(Number::from_ordinal(&o("w")), n("[+w]"));
        assert_eq!(n("[+w^(2)]").as_ordinal().unwrap(), o("w^(2)"));
        assert!(n("[+1, -1]").as_ordinal().is_err());
        assert_eq!(Number::zero().as_ordinal().unwrap(), o("0"));
    }

    #[test]
    fn dyadic_examples() {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(n("[+1, -1]").dyadic_value().unwrap(), half);
        assert_eq!(n("[+2]").dyadic_value().unwrap(), BigRational::from_integer(BigInt::from(2)));
        assert_eq!(n("[-1, +1]").dyadic_value().unwrap(), -half);
        assert!(n("[+w]").dyadic_value().is_err());
    }

    #[test]
    fn simplest_between_examples() {
        let s = |a: &str, b: &str| Number::simplest_between(&n(a), &n(b)).unwrap();
        assert_eq!(s("[-1]", "[+1]"), Number::zero());
        assert_eq!(s("0", "[+1]"), n("[+1, -1]"));
        assert_eq!(s("[+1]", "[+w]"), n("[+2]"));
        assert_eq!(s("[+1, -1]", "[+1, -1, +1]"), n("[+1, -1, +1, -1]"));
        assert!(Number::simplest_between(&n("[+1]"), &n("[+1]")).is_err());
    }

    #[test]
    fn strip_prefix_examples() {
        let base = n("[+w, -w^(2), +1]");
        assert_eq!(base.strip_prefix(&n("[+w]")).unwrap().unwrap(), n("[-w^(2), +1]"));
        // 2 ∔ ω = ω: two pluses are an initial segment of ω pluses, and the
        // remainder still has ω of them.
        assert_eq!(base.strip_prefix(&n("[+2]")).unwrap().unwrap(), base);
        assert_eq!(base.strip_prefix(&n("[-1]")).unwrap(), None);
        assert_eq!(base.strip_prefix(&n("[+w, -w^(3)]")).unwrap(), None);
        assert_eq!(base.strip_prefix(&Number::zero()).unwrap().unwrap(), base);
        assert_eq!(
            base.strip_prefix(&n("[+w, -w]")).unwrap().unwrap(),
            n("[-w^(2)]").strip_prefix(&n("[-w]")).unwrap().unwrap().concat(&n("[+1]")).unwrap()
        );
    }

    #[test]
    fn parse_print_roundtrip() {
        for text in ["0", "[+w]", "[+w, -w^(3)]", "[+eps(0), -w^(w^(eps(0)+1))]", "[-1, +w]"] {
            assert_eq!(n(text).to_string(), text);
        }
    }
}
