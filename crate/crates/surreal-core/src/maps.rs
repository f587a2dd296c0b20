//! The parametrisation maps: ω-map, ε-map, ι-map, κ-map, and the auxiliary
//! structures `V_a` with their fixed-point parametrisation `Ξ_{V_a}^ω`.
//!
//! The ω-map is implemented by the run rule: with a running plus-count τ′, a
//! plus run of length α contributes `+ω^{τ′ ∔ α}` (advancing τ′ by α) and a
//! minus run of length α contributes `−(ω^{τ′ ∔ 1} ×̇ α)`; the whole image is
//! prefixed by `+1`, which the first plus image absorbs. The paper's worked
//! examples (√ω, log ω, ordinal powers) pin this rule down.
//!
//! Symbolic tails map to [`TailDescriptor::MoImage`] tails; the fixed point
//! `V(a)` is generated operationally as the stabilized run stream of the
//! iterates `Ξ_{V_a}ⁿ(0)`.

use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::number::{Number, Run, RunStream, Segment, Sign, Tail, TailDescriptor};
use crate::ord::{ExtOrdinal, OrdinalTerm};

/// The data of the structure `V_a`: `ς_a = ε_{♭τ_a}` and `δ_a = ω^{ς_a ∔ 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructParams {
    pub a: Number,
    pub sigma: OrdinalTerm,
    pub delta: OrdinalTerm,
}

impl StructParams {
    pub fn new(a: &Number) -> StructParams {
        let sigma = OrdinalTerm::eps(&a.tau().flat());
        let delta = sigma.succ().omega_pow();
        StructParams { a: a.clone(), sigma, delta }
    }
}

/// The ω-map `z ↦ ω̇^z` onto monomials.
pub fn map_mo(z: &Number) -> Result<Number> {
    let mut segs: Vec<Segment> = vec![Segment::Run(Run::plus(OrdinalTerm::one()))];
    let mut tau = OrdinalTerm::zero();
    for seg in z.segments() {
        match seg {
            Segment::Run(r) => match r.sign {
                Sign::Plus => {
                    tau = tau.plus(&r.len);
                    segs.push(Segment::Run(Run::plus(tau.omega_pow())));
                }
                Sign::Minus => {
                    let len = tau.succ().omega_pow().times(&r.len);
                    segs.push(Segment::Run(Run::minus(len)));
                }
            },
            Segment::Tail(t) => {
                let inner = Number::normalize(vec![Segment::Tail(t.clone())])?;
                let stream = MoImageStream::new(inner, tau.clone());
                tau = tau.plus(&stream.inner_tau);
                segs.push(Segment::Tail(Tail::new(Arc::new(stream))));
            }
        }
    }
    Number::normalize(segs)
}

/// Inverse of the ω-map; errors on numbers outside its image.
pub fn map_mo_inv(m: &Number) -> Result<Number> {
    if m.is_zero() {
        return Err(Error::NotAMonomial("0 is not a monomial".into()));
    }
    let mut out: Vec<Segment> = Vec::new();
    let mut tau = OrdinalTerm::zero();
    for (i, seg) in m.segments().iter().enumerate() {
        match seg {
            Segment::Run(r) => match r.sign {
                Sign::Plus => {
                    if i == 0 && r.len == OrdinalTerm::one() {
                        // Bare `+1` prefix: z starts with a minus run or ends.
                        continue;
                    }
                    let e = single_pow_exponent(&r.len).ok_or_else(|| {
                        Error::NotAMonomial(format!("plus run of length {} is not an ω-power", r.len))
                    })?;
                    let alpha = tau.left_sub(&e).map_err(|_| {
                        Error::NotAMonomial("plus run exponent below running plus-count".into())
                    })?;
                    if alpha.is_zero() {
                        return Err(Error::NotAMonomial("repeated plus-run exponent".into()));
                    }
                    out.push(Segment::Run(Run::plus(alpha.clone())));
                    tau = e;
                }
                Sign::Minus => {
                    if i == 0 {
                        return Err(Error::NotAMonomial("monomials start with a plus".into()));
                    }
                    let alpha = r.len.left_div_pow(&tau.succ()).map_err(|_| {
                        Error::NotAMonomial(format!(
                            "minus run of length {} is not ω^{{τ′+1}} ×̇ α",
                            r.len
                        ))
                    })?;
                    out.push(Segment::Run(Run::minus(alpha)));
                }
            },
            Segment::Tail(t) => {
                if t.negated() || t.lead().is_some() {
                    return Err(Error::NotAMonomial("unexpected tail shape".into()));
                }
                match t.descriptor() {
                    TailDescriptor::MoImage { inner, start_tau } => {
                        if start_tau != tau {
                            return Err(Error::NotAMonomial(
                                "ω-image tail seeded at the wrong plus-count".into(),
                            ));
                        }
                        tau = start_tau.plus(&inner.tau());
                        out.extend(inner.segments().iter().cloned());
                    }
                    TailDescriptor::V { .. } => {
                        return Err(Error::NotAMonomial("V-tail is not an ω-image".into()))
                    }
                }
            }
        }
    }
    Number::normalize(out)
}

fn single_pow_exponent(len: &OrdinalTerm) -> Option<OrdinalTerm> {
    match len.addends() {
        [a] if a.coeff == 1u32.into() => Some(a.head.exponent()),
        _ => None,
    }
}

/// The ε-map `Ξ_Mo^ω`: parametrisation of the ω-map's fixed points.
pub fn map_eps(z: &Number) -> Result<Number> {
    let runs = z.explicit_runs()?;
    let mut segs: Vec<Segment> =
        vec![Segment::Run(Run::plus(OrdinalTerm::eps(&ExtOrdinal::zero())))];
    let mut tau = OrdinalTerm::zero();
    for r in &runs {
        match r.sign {
            Sign::Plus => {
                tau = tau.plus(&r.len);
                segs.push(Segment::Run(Run::plus(OrdinalTerm::eps(&ExtOrdinal::Ord(
                    tau.clone(),
                )))));
            }
            Sign::Minus => {
                let unit = OrdinalTerm::eps_omega_pow(&ExtOrdinal::Ord(tau.clone()));
                segs.push(Segment::Run(Run::minus(unit.times(&r.len))));
            }
        }
    }
    Number::normalize(segs)
}

/// The ι-map of Kuhlmann–Matusinski: plus runs contribute ε-values with ♭'d
/// subscripts, minus runs contribute `−(ω ×̇ α)`.
pub fn map_iota(z: &Number) -> Result<Number> {
    let runs = z.explicit_runs()?;
    let mut segs: Vec<Segment> = Vec::new();
    let mut tau = OrdinalTerm::zero();
    for r in &runs {
        match r.sign {
            Sign::Plus => {
                tau = tau.plus(&r.len);
                segs.push(Segment::Run(Run::plus(OrdinalTerm::eps(&tau.flat()))));
            }
            Sign::Minus => {
                segs.push(Segment::Run(Run::minus(OrdinalTerm::omega().times(&r.len))));
            }
        }
    }
    Number::normalize(segs)
}

/// `κ_a = ω̇^{ω̇^{ι_a}}`.
pub fn map_kappa(a: &Number) -> Result<Number> {
    map_mo(&map_mo(&map_iota(a)?)?)
}

/// One application `Ξ_{V_a} v = δ_a ∔ (−δ_a ×̇ ω ×̇ δ_a) ∔ ω̇^v`.
pub fn map_xi_va(p: &StructParams, v: &Number) -> Result<Number> {
    let head = Number::from_runs(vec![
        Run::plus(p.delta.clone()),
        Run::minus(p.delta.times(&OrdinalTerm::omega()).times(&p.delta)),
    ])?;
    head.concat(&map_mo(v)?)
}

/// Order type of the +1 (equivalently −1, equivalently all) positions of
/// `V(a)`: `ε_{♭τ_{a∔1}}`.
fn v_total(p: &StructParams) -> OrdinalTerm {
    OrdinalTerm::eps(&p.a.tau().succ().flat())
}

/// `V(a) = Ξ_{V_a}^ω 0` as a single V-tail number.
pub fn map_v(p: &StructParams) -> Result<Number> {
    let stream = VStream::new(p.clone());
    Number::normalize(vec![Segment::Tail(Tail::new(Arc::new(stream)))])
}

/// `Ξ_{V_a}^ω z = V(a) ∔ Φ^a(z)` (Theorem shape: a V-tail followed by
/// explicit Φ runs).
pub fn map_xi_va_omega(p: &StructParams, z: &Number) -> Result<Number> {
    let runs = z.explicit_runs()?;
    let mut segs = map_v(p)?.segments().to_vec();
    // Running τ_{a ∔ 1 ∔ z-prefix}.
    let mut t = p.a.tau().succ();
    for r in &runs {
        match r.sign {
            Sign::Plus => {
                t = t.plus(&r.len);
                segs.push(Segment::Run(Run::plus(OrdinalTerm::eps(&t.flat()))));
            }
            Sign::Minus => {
                let unit = OrdinalTerm::eps_omega_pow(&t.flat());
                segs.push(Segment::Run(Run::minus(unit.times(&r.len))));
            }
        }
    }
    Number::normalize(segs)
}

// ---------------------------------------------------------------------------
// Run streams
// ---------------------------------------------------------------------------

/// Run stream of `V(a)`: the stabilized runs of the iterates `Ξ_{V_a}ⁿ(0)`.
/// Each iterate extends the previous by two runs, and all runs but the last
/// are final.
pub struct VStream {
    params: StructParams,
    cache: Mutex<VCache>,
}

struct VCache {
    iterate: Number,
    stable: Vec<Run>,
}

impl VStream {
    pub fn new(params: StructParams) -> VStream {
        VStream { params, cache: Mutex::new(VCache { iterate: Number::zero(), stable: Vec::new() }) }
    }
}

impl RunStream for VStream {
    fn run(&self, i: usize) -> Result<Run> {
        let mut cache = self.cache.lock().expect("V cache");
        while cache.stable.len() <= i {
            let next = map_xi_va(&self.params, &cache.iterate)?;
            let runs = next.explicit_runs()?;
            cache.stable = runs[..runs.len() - 1].to_vec();
            cache.iterate = next;
        }
        Ok(cache.stable[i].clone())
    }

    fn total_len(&self) -> OrdinalTerm {
        v_total(&self.params)
    }

    fn total_plus(&self) -> OrdinalTerm {
        v_total(&self.params)
    }

    fn total_minus(&self) -> OrdinalTerm {
        v_total(&self.params)
    }

    fn first_sign(&self) -> Sign {
        Sign::Plus
    }

    fn descriptor(&self) -> TailDescriptor {
        TailDescriptor::V {
            a: self.params.a.clone(),
            sigma: self.params.sigma.clone(),
            delta: self.params.delta.clone(),
        }
    }
}

/// Run stream of the ω-map image of an inner number's stream, seeded at
/// plus-count `start_tau`.
pub struct MoImageStream {
    inner: Number,
    start_tau: OrdinalTerm,
    inner_tau: OrdinalTerm,
    cache: Mutex<MoCache>,
}

struct MoCache {
    runs: Vec<Run>,
    tau: OrdinalTerm,
}

impl MoImageStream {
    pub fn new(inner: Number, start_tau: OrdinalTerm) -> MoImageStream {
        let inner_tau = inner.tau();
        let cache = Mutex::new(MoCache { runs: Vec::new(), tau: start_tau.clone() });
        MoImageStream { inner, start_tau, inner_tau, cache }
    }

    fn inner_run(&self, i: usize) -> Result<Run> {
        // The inner number is a single-tail number by construction.
        match self.inner.segments() {
            [Segment::Tail(t)] => t.run(i),
            _ => Err(Error::UnsupportedTail("malformed ω-image inner".into())),
        }
    }
}

impl RunStream for MoImageStream {
    fn run(&self, i: usize) -> Result<Run> {
        let mut cache = self.cache.lock().expect("Mo cache");
        while cache.runs.len() <= i {
            let j = cache.runs.len();
            let r = self.inner_run(j)?;
            let image = match r.sign {
                Sign::Plus => {
                    cache.tau = cache.tau.plus(&r.len);
                    Run::plus(cache.tau.omega_pow())
                }
                Sign::Minus => Run::minus(cache.tau.succ().omega_pow().times(&r.len)),
            };
            cache.runs.push(image);
        }
        Ok(cache.runs[i].clone())
    }

    fn total_len(&self) -> OrdinalTerm {
        self.start_tau.plus(&self.inner_tau).omega_pow()
    }

    fn total_plus(&self) -> OrdinalTerm {
        self.total_len()
    }

    fn total_minus(&self) -> OrdinalTerm {
        self.total_len()
    }

    fn first_sign(&self) -> Sign {
        match self.inner.segments() {
            [Segment::Tail(t)] => t.first_sign(),
            _ => Sign::Plus,
        }
    }

    fn descriptor(&self) -> TailDescriptor {
        TailDescriptor::MoImage { inner: self.inner.clone(), start_tau: self.start_tau.clone() }
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
    fn mo_paper_anchors() {
        // √ω and log ω.
        assert_eq!(map_mo(&n("[+1, -1]")).unwrap(), n("[+w, -w^(2)]"));
        assert_eq!(map_mo(&n("[+1, -w]")).unwrap(), n("[+w, -w^(3)]"));
        // Ordinal exponentiation with basis ω.
        assert_eq!(map_mo(&n("[+w+2]")).unwrap(), n("[+w^(w+2)]"));
        assert_eq!(map_mo(&Number::zero()).unwrap(), n("[+1]"));
        // Run rule below zero.
        assert_eq!(map_mo(&n("[-1]")).unwrap(), n("[+1, -w]"));
        assert_eq!(map_mo(&n("[-w]")).unwrap(), n("[+1, -w^(2)]"));
    }

    #[test]
    fn mo_inv_examples() {
        assert_eq!(map_mo_inv(&n("[+w, -w^(2)]")).unwrap(), n("[+1, -1]"));
        assert_eq!(map_mo_inv(&n("[+w^(w)]")).unwrap(), n("[+w]"));
        assert!(map_mo_inv(&n("[+1, -1]")).is_err());
        assert!(map_mo_inv(&Number::zero()).is_err());
        for z in ["0", "[+1, -1]", "[-w, +2]", "[+w, -w^(2), +1]"] {
            let z = n(z);
            assert_eq!(map_mo_inv(&map_mo(&z).unwrap()).unwrap(), z);
        }
    }

    #[test]
    fn eps_examples() {
        assert_eq!(map_eps(&Number::zero()).unwrap(), n("[+eps(0)]"));
        assert_eq!(
            map_eps(&n("[-1]")).unwrap(),
            n("[+eps(0), -w^(w^(eps(0)+1))]")
        );
        assert_eq!(
            map_eps(&n("[+1, -1]")).unwrap(),
            n("[+eps(1), -w^(w^(eps(1)+1))]")
        );
        // Fixed points of the ω-map.
        for z in ["0", "[-1]", "[+1, -1]", "[+w]", "[-w, +1]"] {
            let v = map_eps(&n(z)).unwrap();
            assert_eq!(map_mo(&v).unwrap(), v, "mo(eps({z})) = eps({z})");
        }
    }

    #[test]
    fn iota_kappa_examples() {
        assert_eq!(map_iota(&Number::zero()).unwrap(), Number::zero());
        assert_eq!(map_iota(&n("[-1]")).unwrap(), n("[-w]"));
        assert_eq!(map_iota(&n("[+1]")).unwrap(), n("[+eps(0)]"));
        assert_eq!(map_kappa(&Number::zero()).unwrap(), n("[+w]"));
        assert_eq!(map_kappa(&n("[+1]")).unwrap(), n("[+eps(0)]"));
        assert_eq!(map_kappa(&n("[-1]")).unwrap(), n("[+w, -w^(4)]"));
    }

    #[test]
    fn struct_params_examples() {
        let p0 = StructParams::new(&Number::zero());
        assert_eq!((p0.sigma.clone(), p0.delta.clone()), (o("0"), o("w")));
        let p1 = StructParams::new(&n("[+1]"));
        assert_eq!((p1.sigma.clone(), p1.delta.clone()), (o("eps(0)"), o("w^(eps(0)+1)")));
        let pm = StructParams::new(&n("[-1]"));
        assert_eq!((pm.sigma, pm.delta), (o("0"), o("w")));
        // ς_a = τ_{ι_a}.
        for a in ["0", "[+1]", "[-1]", "[+2, -1]", "[+w]"] {
            let a = n(a);
            let p = StructParams::new(&a);
            assert_eq!(p.sigma, map_iota(&a).unwrap().tau());
        }
    }

    #[test]
    fn xi_va_examples() {
        let p = StructParams::new(&Number::zero());
        assert_eq!(map_xi_va(&p, &Number::zero()).unwrap(), n("[+w, -w^(3), +1]"));
        assert_eq!(map_xi_va(&p, &n("[+1]")).unwrap(), n("[+w, -w^(3), +w]"));
    }

    #[test]
    fn v_stream_first_runs() {
        let p = StructParams::new(&Number::zero());
        let v = map_v(&p).unwrap();
        let [Segment::Tail(t)] = v.segments() else { panic!("expected a single tail") };
        let expect = [
            Run::plus(o("w")),
            Run::minus(o("w^(3)")),
            Run::plus(o("w^(w)")),
            Run::minus(o("w^(w+4)")),
        ];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(&t.run(i).unwrap(), e, "run {i}");
        }
        assert_eq!(v.tau(), o("eps(0)"));
        assert_eq!(v.len(), o("eps(0)"));
    }

    #[test]
    fn xi_va_omega_examples() {
        let p = StructParams::new(&Number::zero());
        assert_eq!(map_xi_va_omega(&p, &Number::zero()).unwrap(), map_v(&p).unwrap());
        let v1 = map_xi_va_omega(&p, &n("[+1]")).unwrap();
        assert_eq!(v1, map_v(&p).unwrap().concat(&n("[+eps(1)]")).unwrap());
        let vm = map_xi_va_omega(&p, &n("[-1]")).unwrap();
        assert_eq!(
            vm,
            map_v(&p).unwrap().concat(&n("[-w^(w^(eps(0)+1))]")).unwrap()
        );
    }

    #[test]
    fn mo_of_tail_round_trip() {
        let p = StructParams::new(&Number::zero());
        let v = map_xi_va_omega(&p, &n("[+1]")).unwrap();
        let image = map_mo(&v).unwrap();
        assert_eq!(map_mo_inv(&image).unwrap(), v);
    }
}
