//! Ordinal notations below the first fixed point of `α ↦ ε_α`.
//!
//! An [`OrdinalTerm`] is a Cantor normal form sum whose heads are either
//! plain ω-powers `ω^e` or ε-terms `ε_t` (with `t` itself a notation, nested
//! to any finite depth). The normal form is unique: two terms denote the same
//! ordinal iff they are structurally equal. Supported arithmetic is the
//! fragment the sign-sequence formulas need — sum, product, ω-power,
//! ε-subscript, left subtraction, and the grid helpers `split` / `div_omega`.
//!
//! `ε_{−∞} := 0` is handled by the extended value [`ExtOrdinal::NegInf`],
//! which is never stored inside a term.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigUint;
use num::traits::{One, Zero};

use crate::error::{Error, Result};

/// Head of a CNF addend: `ω^e` or `ε_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Head {
    Pow(OrdinalTerm),
    Eps(OrdinalTerm),
}

/// One CNF addend `head · coeff` with `coeff ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Addend {
    pub head: Head,
    pub coeff: BigUint,
}

/// An ordinal in unique normal form: addends with strictly decreasing heads.
/// The empty sum is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OrdinalTerm {
    addends: Vec<Addend>,
}

/// An ordinal or `−∞` (used for `♭τ` and ε-subscripts; `ε_{−∞} = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtOrdinal {
    NegInf,
    Ord(OrdinalTerm),
}

impl Head {
    /// The exponent `e` with `ω^e` equal to this head (`ε_t` is `ω^{ε_t}`).
    pub fn exponent(&self) -> OrdinalTerm {
        match self {
            Head::Pow(e) => e.clone(),
            Head::Eps(t) => OrdinalTerm {
                addends: vec![Addend { head: Head::Eps(t.clone()), coeff: BigUint::one() }],
            },
        }
    }

    /// Compare denoted values: `ω^e < ε_t` iff `e < ε_t`.
    fn value_cmp(&self, other: &Head) -> Ordering {
        match (self, other) {
            (Head::Pow(a), Head::Pow(b)) => a.cmp(b),
            (Head::Eps(a), Head::Eps(b)) => a.cmp(b),
            (Head::Pow(e), Head::Eps(t)) => e.cmp(&OrdinalTerm::eps_ord(t)),
            (Head::Eps(t), Head::Pow(e)) => OrdinalTerm::eps_ord(t).cmp(e),
        }
    }
}

impl PartialOrd for OrdinalTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdinalTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.addends.iter().zip(other.addends.iter()) {
            match a.head.value_cmp(&b.head) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match a.coeff.cmp(&b.coeff) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.addends.len().cmp(&other.addends.len())
    }
}

impl OrdinalTerm {
    pub fn zero() -> Self {
        OrdinalTerm::default()
    }

    pub fn one() -> Self {
        OrdinalTerm::nat(1)
    }

    pub fn omega() -> Self {
        OrdinalTerm { addends: vec![Addend { head: Head::Pow(Self::zero().succ()), coeff: BigUint::one() }] }
    }

    pub fn nat(n: u64) -> Self {
        Self::from_nat(BigUint::from(n))
    }

    pub fn from_nat(n: BigUint) -> Self {
        if n.is_zero() {
            Self::zero()
        } else {
            OrdinalTerm { addends: vec![Addend { head: Head::Pow(Self::zero()), coeff: n }] }
        }
    }

    /// The successor `self ∔ 1`.
    pub fn succ(&self) -> Self {
        self.plus(&Self::one())
    }

    pub fn addends(&self) -> &[Addend] {
        &self.addends
    }

    pub fn is_zero(&self) -> bool {
        self.addends.is_empty()
    }

    /// Zero or a limit ordinal (no trailing finite addend).
    pub fn is_limit_or_zero(&self) -> bool {
        match self.addends.last() {
            None => true,
            Some(a) => a.head != Head::Pow(Self::zero()),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    /// The natural number this term denotes, if finite.
    pub fn as_nat(&self) -> Option<BigUint> {
        match self.addends.as_slice() {
            [] => Some(BigUint::zero()),
            [a] if a.head == Head::Pow(Self::zero()) => Some(a.coeff.clone()),
            _ => None,
        }
    }

    /// Build a single addend, collapsing `ω^{ε_t}` to the `ε_t` head.
    fn addend(exponent: OrdinalTerm, coeff: BigUint) -> Addend {
        debug_assert!(!coeff.is_zero());
        match exponent.addends.as_slice() {
            [Addend { head: Head::Eps(t), coeff: c }] if c.is_one() => {
                Addend { head: Head::Eps(t.clone()), coeff }
            }
            _ => Addend { head: Head::Pow(exponent), coeff },
        }
    }

    /// `ω^self`.
    pub fn omega_pow(&self) -> Self {
        OrdinalTerm { addends: vec![Self::addend(self.clone(), BigUint::one())] }
    }

    /// `ε_t` for an ordinal subscript.
    fn eps_ord(t: &OrdinalTerm) -> Self {
        OrdinalTerm { addends: vec![Addend { head: Head::Eps(t.clone()), coeff: BigUint::one() }] }
    }

    /// `ε_t`, with `ε_{−∞} = 0`.
    pub fn eps(t: &ExtOrdinal) -> Self {
        match t {
            ExtOrdinal::NegInf => Self::zero(),
            ExtOrdinal::Ord(t) => Self::eps_ord(t),
        }
    }

    /// `ε̇_t^ω = ω^{ε_t ×̇ ω}` (ordinal exponentiation of `ε_t` by ω).
    pub fn eps_omega_pow(t: &ExtOrdinal) -> Self {
        match t {
            // ε_{−∞}^ω = 0^ω; the formulas only use this through the minus
            // parameter of Φ, where the subscript is a genuine ordinal.
            ExtOrdinal::NegInf => Self::zero(),
            ExtOrdinal::Ord(t) => Self::eps_ord(t).times(&Self::omega()).omega_pow(),
        }
    }

    /// Ordinal sum `self ∔ other` (left addends below `other`'s head absorb).
    pub fn plus(&self, other: &Self) -> Self {
        let Some(first) = other.addends.first() else {
            return self.clone();
        };
        let mut addends: Vec<Addend> = Vec::with_capacity(self.addends.len() + other.addends.len());
        let mut merged = false;
        for a in &self.addends {
            match a.head.value_cmp(&first.head) {
                Ordering::Greater => addends.push(a.clone()),
                Ordering::Equal => {
                    addends.push(Addend { head: a.head.clone(), coeff: &a.coeff + &first.coeff });
                    merged = true;
                    break;
                }
                Ordering::Less => break,
            }
        }
        let rest = if merged { &other.addends[1..] } else { &other.addends[..] };
        addends.extend_from_slice(rest);
        OrdinalTerm { addends }
    }

    /// Ordinal product `self ×̇ other` via right-factor CNF distribution.
    pub fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let lead = &self.addends[0];
        let lead_exp = lead.head.exponent();
        let mut result = Self::zero();
        for b in &other.addends {
            let part = if b.head == Head::Pow(Self::zero()) {
                // Finite right factor: scale the leading coefficient.
                let mut scaled = self.clone();
                scaled.addends[0].coeff = &lead.coeff * &b.coeff;
                scaled
            } else {
                let exp = lead_exp.plus(&b.head.exponent());
                OrdinalTerm { addends: vec![Self::addend(exp, b.coeff.clone())] }
            };
            result = result.plus(&part);
        }
        result
    }

    /// The unique `c` with `self ∔ c = other`; errors when `self > other`.
    pub fn left_sub(&self, other: &Self) -> Result<Self> {
        let mut i = 0;
        while i < self.addends.len() && i < other.addends.len() {
            let (a, b) = (&self.addends[i], &other.addends[i]);
            match a.head.value_cmp(&b.head) {
                Ordering::Greater => return Err(Error::Undefined),
                Ordering::Less => return Ok(OrdinalTerm { addends: other.addends[i..].to_vec() }),
                Ordering::Equal => match a.coeff.cmp(&b.coeff) {
                    Ordering::Greater => return Err(Error::Undefined),
                    Ordering::Less => {
                        let mut addends = vec![Addend { head: b.head.clone(), coeff: &b.coeff - &a.coeff }];
                        addends.extend_from_slice(&other.addends[i + 1..]);
                        return Ok(OrdinalTerm { addends });
                    }
                    Ordering::Equal => i += 1,
                },
            }
        }
        if i < self.addends.len() {
            return Err(Error::Undefined);
        }
        Ok(OrdinalTerm { addends: other.addends[i..].to_vec() })
    }

    /// `self = limitPart ∔ finitePart` with `limitPart` zero or a limit.
    pub fn split(&self) -> (Self, BigUint) {
        match self.addends.last() {
            Some(a) if a.head == Head::Pow(Self::zero()) => {
                let limit = OrdinalTerm { addends: self.addends[..self.addends.len() - 1].to_vec() };
                (limit, a.coeff.clone())
            }
            _ => (self.clone(), BigUint::zero()),
        }
    }

    /// The unique `ℓ` with `ω ×̇ ℓ = self`; requires `self` zero or a limit.
    pub fn div_omega(&self) -> Result<Self> {
        let one = Self::one();
        let mut addends = Vec::with_capacity(self.addends.len());
        for a in &self.addends {
            let exp = a.head.exponent();
            if exp.is_zero() {
                return Err(Error::DomainError("div_omega on a non-limit ordinal".into()));
            }
            if exp == one {
                addends.push(Addend { head: Head::Pow(Self::zero()), coeff: a.coeff.clone() });
            } else {
                let gamma = one.left_sub(&exp).expect("1 ∔ γ = exp with exp > 1");
                addends.push(Self::addend(gamma, a.coeff.clone()));
            }
        }
        Ok(OrdinalTerm { addends })
    }

    /// The unique `α` with `ω^d ×̇ α = self`, if it exists.
    pub fn left_div_pow(&self, d: &Self) -> Result<Self> {
        let mut addends = Vec::with_capacity(self.addends.len());
        for a in &self.addends {
            let exp = a.head.exponent();
            match d.cmp(&exp) {
                Ordering::Greater => {
                    return Err(Error::DomainError("left_div_pow: exponent below divisor".into()))
                }
                Ordering::Equal => {
                    addends.push(Addend { head: Head::Pow(Self::zero()), coeff: a.coeff.clone() })
                }
                Ordering::Less => {
                    let gamma = d.left_sub(&exp)?;
                    addends.push(Self::addend(gamma, a.coeff.clone()));
                }
            }
        }
        Ok(OrdinalTerm { addends })
    }

    /// `♭τ`: the unique `t` with `1 ∔ t = τ` for `τ > 0`, else `−∞`.
    pub fn flat(&self) -> ExtOrdinal {
        if self.is_zero() {
            ExtOrdinal::NegInf
        } else {
            ExtOrdinal::Ord(Self::one().left_sub(self).expect("τ ≥ 1"))
        }
    }
}

impl ExtOrdinal {
    pub fn zero() -> Self {
        ExtOrdinal::Ord(OrdinalTerm::zero())
    }

    pub fn as_ord(&self) -> Option<&OrdinalTerm> {
        match self {
            ExtOrdinal::NegInf => None,
            ExtOrdinal::Ord(t) => Some(t),
        }
    }
}

impl PartialOrd for ExtOrdinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtOrdinal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtOrdinal::NegInf, ExtOrdinal::NegInf) => Ordering::Equal,
            (ExtOrdinal::NegInf, _) => Ordering::Less,
            (_, ExtOrdinal::NegInf) => Ordering::Greater,
            (ExtOrdinal::Ord(a), ExtOrdinal::Ord(b)) => a.cmp(b),
        }
    }
}

impl From<u64> for OrdinalTerm {
    fn from(n: u64) -> Self {
        Self::nat(n)
    }
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

impl fmt::Display for OrdinalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.addends.is_empty() {
            return write!(f, "0");
        }
        for (i, a) in self.addends.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            let coeff_one = a.coeff.is_one();
            match &a.head {
                Head::Pow(e) if e.is_zero() => write!(f, "{}", a.coeff)?,
                Head::Pow(e) if *e == OrdinalTerm::one() => {
                    write!(f, "w")?;
                    if !coeff_one {
                        write!(f, "*{}", a.coeff)?;
                    }
                }
                Head::Pow(e) => {
                    write!(f, "w^({e})")?;
                    if !coeff_one {
                        write!(f, "*{}", a.coeff)?;
                    }
                }
                Head::Eps(t) => {
                    write!(f, "eps({t})")?;
                    if !coeff_one {
                        write!(f, "*{}", a.coeff)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Nat(BigUint),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Lexer {
    fn new(text: &str) -> Result<Self> {
        let mut toks = Vec::new();
        let (mut line, mut col) = (1usize, 1usize);
        let mut chars = text.chars().peekable();
        while let Some(&c) = chars.peek() {
            let at = (line, col);
            match c {
                '\n' => {
                    chars.next();
                    line += 1;
                    col = 1;
                    continue;
                }
                c if c.is_whitespace() => {
                    chars.next();
                    col += 1;
                    continue;
                }
                '+' => {
                    chars.next();
                    toks.push((Tok::Plus, at.0, at.1));
                    col += 1;
                }
                '-' => {
                    chars.next();
                    toks.push((Tok::Minus, at.0, at.1));
                    col += 1;
                }
                '*' => {
                    chars.next();
                    toks.push((Tok::Star, at.0, at.1));
                    col += 1;
                }
                '^' => {
                    chars.next();
                    toks.push((Tok::Caret, at.0, at.1));
                    col += 1;
                }
                '(' => {
                    chars.next();
                    toks.push((Tok::LParen, at.0, at.1));
                    col += 1;
                }
                ')' => {
                    chars.next();
                    toks.push((Tok::RParen, at.0, at.1));
                    col += 1;
                }
                c if c.is_ascii_digit() => {
                    let mut digits = String::new();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            digits.push(d);
                            chars.next();
                            col += 1;
                        } else {
                            break;
                        }
                    }
                    let n = BigUint::from_str(&digits).expect("digits");
                    toks.push((Tok::Nat(n), at.0, at.1));
                }
                c if c.is_ascii_alphabetic() => {
                    let mut name = String::new();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            name.push(d);
                            chars.next();
                            col += 1;
                        } else {
                            break;
                        }
                    }
                    toks.push((Tok::Ident(name), at.0, at.1));
                }
                other => {
                    return Err(Error::parse(line, col, format!("unexpected character {other:?}")))
                }
            }
        }
        Ok(Lexer { toks, pos: 0, end: (line, col) })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|&(_, l, c)| (l, c)).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let (l, c) = self.here();
        match self.next() {
            Some(t) if t == tok => Ok(()),
            _ => Err(Error::parse(l, c, format!("expected {what}"))),
        }
    }
}

/// One written addend, before normal-form validation.
struct RawAtom {
    head: Head,
    /// Head as written (`Pow(eps(t))` differs from the canonical `Eps(t)`).
    written_pow_of_eps: bool,
    coeff: BigUint,
    /// `eps(-inf)` sugar, denoting 0.
    neg_inf_eps: bool,
    /// Written as a bare natural number.
    plain_nat: bool,
}

fn parse_atom(lx: &mut Lexer) -> Result<RawAtom> {
    let (l, c) = lx.here();
    match lx.next() {
        Some(Tok::Nat(n)) => Ok(RawAtom {
            head: Head::Pow(OrdinalTerm::zero()),
            written_pow_of_eps: false,
            coeff: n,
            neg_inf_eps: false,
            plain_nat: true,
        }),
        Some(Tok::Ident(name)) if name == "w" => {
            let exponent = if lx.peek() == Some(&Tok::Caret) {
                lx.next();
                lx.expect(Tok::LParen, "'(' after '^'")?;
                let e = parse_sum(lx)?;
                lx.expect(Tok::RParen, "')'")?;
                e
            } else {
                OrdinalTerm::one()
            };
            let coeff = parse_coeff(lx)?;
            let written_pow_of_eps =
                matches!(exponent.addends(), [a] if matches!(a.head, Head::Eps(_)) && a.coeff.is_one());
            Ok(RawAtom {
                head: Head::Pow(exponent),
                written_pow_of_eps,
                coeff,
                neg_inf_eps: false,
                plain_nat: false,
            })
        }
        Some(Tok::Ident(name)) if name == "eps" => {
            lx.expect(Tok::LParen, "'(' after 'eps'")?;
            if lx.peek() == Some(&Tok::Minus) {
                lx.next();
                let (l2, c2) = lx.here();
                match lx.next() {
                    Some(Tok::Ident(inf)) if inf == "inf" => {}
                    _ => return Err(Error::parse(l2, c2, "expected 'inf' after '-'")),
                }
                lx.expect(Tok::RParen, "')'")?;
                let coeff = parse_coeff(lx)?;
                return Ok(RawAtom {
                    head: Head::Pow(OrdinalTerm::zero()),
                    written_pow_of_eps: false,
                    coeff,
                    neg_inf_eps: true,
                    plain_nat: false,
                });
            }
            let t = parse_sum(lx)?;
            lx.expect(Tok::RParen, "')'")?;
            let coeff = parse_coeff(lx)?;
            Ok(RawAtom { head: Head::Eps(t), written_pow_of_eps: false, coeff, neg_inf_eps: false, plain_nat: false })
        }
        _ => Err(Error::parse(l, c, "expected an ordinal atom (nat, 'w', or 'eps')")),
    }
}

fn parse_coeff(lx: &mut Lexer) -> Result<BigUint> {
    if lx.peek() != Some(&Tok::Star) {
        return Ok(BigUint::one());
    }
    lx.next();
    let (l, c) = lx.here();
    match lx.next() {
        Some(Tok::Nat(n)) => Ok(n),
        _ => Err(Error::parse(l, c, "expected a natural number after '*'")),
    }
}

/// Parse a sum of atoms and validate it is in normal form; the diagnostic for
/// non-normal input carries the normalized rendering.
fn parse_sum(lx: &mut Lexer) -> Result<OrdinalTerm> {
    let (l, c) = lx.here();
    let mut atoms = vec![parse_atom(lx)?];
    while lx.peek() == Some(&Tok::Plus) {
        lx.next();
        atoms.push(parse_atom(lx)?);
    }

    let mut value = OrdinalTerm::zero();
    for atom in &atoms {
        let singleton = if atom.neg_inf_eps || atom.coeff.is_zero() {
            OrdinalTerm::zero()
        } else {
            OrdinalTerm { addends: vec![OrdinalTerm::addend(atom.head.exponent(), atom.coeff.clone())] }
        };
        value = value.plus(&singleton);
    }

    // Sole `0` and sole `eps(-inf)` render the zero term.
    if atoms.len() == 1
        && (atoms[0].neg_inf_eps || (atoms[0].plain_nat && atoms[0].coeff.is_zero()))
    {
        return Ok(value);
    }

    let normal = atoms.len() == value.addends.len()
        && atoms.iter().zip(value.addends.iter()).all(|(atom, canon)| {
            !atom.neg_inf_eps
                && !atom.written_pow_of_eps
                && atom.head == canon.head
                && atom.coeff == canon.coeff
        });
    if !normal {
        return Err(Error::parse(l, c, format!("ordinal not in normal form; normalized form: {value}")));
    }
    Ok(value)
}

impl FromStr for OrdinalTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lx = Lexer::new(s)?;
        let value = parse_sum(&mut lx)?;
        let (l, c) = lx.here();
        if lx.peek().is_some() {
            return Err(Error::parse(l, c, "trailing input after ordinal"));
        }
        Ok(value)
    }
}

impl serde::Serialize for OrdinalTerm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for OrdinalTerm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> OrdinalTerm {
        s.parse().unwrap()
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(o("w^(w)").cmp(&o("eps(0)")), Ordering::Less);
        assert_eq!(o("w^(eps(0)+1)").cmp(&o("eps(0)")), Ordering::Greater);
        assert_eq!(o("5").cmp(&o("5")), Ordering::Equal);
        assert!(o("w") < o("w+1"));
        assert!(o("w^(2)*2") > o("w^(2)+w*5"));
        assert!(o("eps(0)") < o("eps(1)"));
        assert!(o("eps(eps(0))") > o("eps(w)"));
    }

    #[test]
    fn add_examples() {
        assert_eq!(o("1").plus(&o("w")), o("w"));
        assert_eq!(o("w").plus(&o("1")), o("w+1"));
        assert_eq!(o("w^(2)+w").plus(&o("w^(2)")), o("w^(2)*2"));
        assert_eq!(o("w*2+3").plus(&o("w+1")), o("w*3+1"));
        assert_eq!(o("eps(0)").plus(&o("0")), o("eps(0)"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(o("2").times(&o("w")), o("w"));
        assert_eq!(o("w+1").times(&o("w")), o("w^(2)"));
        assert_eq!(o("w").times(&o("w+1")), o("w^(2)+w"));
        assert_eq!(o("w").times(&o("2")), o("w*2"));
        assert_eq!(o("eps(0)").times(&o("w")), o("w^(eps(0)+1)"));
        assert_eq!(o("w+3").times(&o("w*2+5")), o("w^(2)*2+w*5+3"));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(o("eps(0)").omega_pow(), o("eps(0)"));
        assert_eq!(o("w+1").omega_pow(), o("w^(w+1)"));
        assert_eq!(
            OrdinalTerm::eps_omega_pow(&ExtOrdinal::zero()),
            o("w^(w^(eps(0)+1))")
        );
        assert_eq!(o("0").omega_pow(), o("1"));
    }

    #[test]
    fn eps_examples() {
        assert_eq!(OrdinalTerm::eps(&ExtOrdinal::Ord(o("0"))), o("eps(0)"));
        assert_eq!(OrdinalTerm::eps(&ExtOrdinal::NegInf), o("0"));
        assert_eq!(OrdinalTerm::eps(&ExtOrdinal::Ord(o("eps(0)"))), o("eps(eps(0))"));
    }

    #[test]
    fn left_sub_examples() {
        assert_eq!(o("w").left_sub(&o("w+5")).unwrap(), o("5"));
        assert_eq!(o("3").left_sub(&o("w")).unwrap(), o("w"));
        assert!(o("w^(2)").left_sub(&o("w")).is_err());
        assert_eq!(o("w*2").left_sub(&o("w*5+1")).unwrap(), o("w*3+1"));
        assert_eq!(o("w+1").left_sub(&o("w+1")).unwrap(), o("0"));
    }

    #[test]
    fn split_and_div_examples() {
        assert_eq!(o("w+3").split(), (o("w"), BigUint::from(3u32)));
        assert_eq!(o("5").split(), (o("0"), BigUint::from(5u32)));
        assert_eq!(o("w^(2)+w").div_omega().unwrap(), o("w+1"));
        assert_eq!(o("w").div_omega().unwrap(), o("1"));
        assert!(o("w+1").div_omega().is_err());
        assert_eq!(o("w").times(&o("eps(0)").div_omega().unwrap()), o("eps(0)"));
    }

    #[test]
    fn left_div_pow_examples() {
        assert_eq!(o("w^(3)").left_div_pow(&o("2")).unwrap(), o("w"));
        assert_eq!(o("w^(2)*4").left_div_pow(&o("2")).unwrap(), o("4"));
        assert!(o("w").left_div_pow(&o("2")).is_err());
    }

    #[test]
    fn flat_examples() {
        assert_eq!(o("0").flat(), ExtOrdinal::NegInf);
        assert_eq!(o("1").flat(), ExtOrdinal::Ord(o("0")));
        assert_eq!(o("w").flat(), ExtOrdinal::Ord(o("w")));
        assert_eq!(o("w+1").flat(), ExtOrdinal::Ord(o("w+1")));
    }

    #[test]
    fn parse_print_roundtrip() {
        for text in [
            "0",
            "7",
            "w",
            "w*3",
            "w+1",
            "w^(2)",
            "w^(w+1)*2",
            "eps(0)",
            "eps(w)*4+w^(w)+w*2+9",
            "eps(eps(0)+1)",
            "w^(eps(0)+1)",
        ] {
            assert_eq!(o(text).to_string(), text);
        }
    }

    #[test]
    fn parse_rejects_non_normal() {
        for (text, normalized) in [
            ("1+w", "w"),
            ("w+w", "w*2"),
            ("w^(eps(0))", "eps(0)"),
            ("w*0", "0"),
            ("w+w^(2)", "w^(2)"),
        ] {
            match text.parse::<OrdinalTerm>() {
                Err(Error::Parse { msg, .. }) => {
                    assert!(msg.contains(normalized), "diagnostic {msg:?} for {text:?}")
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn parse_neg_inf_sugar() {
        assert_eq!(o("eps(-inf)"), o("0"));
        assert!("eps(-inf)+1".parse::<OrdinalTerm>().is_err());
    }
}
