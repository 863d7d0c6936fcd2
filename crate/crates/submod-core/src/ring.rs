//! Finite commutative rings `R = Z/n1 x ... x Z/nk`, their ideals as
//! canonical element sets, phi-functions on the ideal lattice, and
//! multiplicatively closed subsets.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A ring element, stored as its index in the lexicographic enumeration of
/// residue tuples (first modulus most significant).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RingElem(pub usize);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingSpec {
    moduli: Vec<u32>,
}

impl RingSpec {
    pub fn new(moduli: &[u32]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::input("ring needs at least one modulus"));
        }
        let mut order: usize = 1;
        for &n in moduli {
            if n < 2 {
                return Err(Error::input(format!("modulus {n} < 2")));
            }
            order = order
                .checked_mul(n as usize)
                .filter(|&o| o <= 1 << 24)
                .ok_or_else(|| Error::resource("ring order too large"))?;
        }
        Ok(RingSpec {
            moduli: moduli.to_vec(),
        })
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&n| n as usize).product()
    }

    pub fn zero(&self) -> RingElem {
        RingElem(0)
    }

    pub fn one(&self) -> RingElem {
        self.encode_reduced(&self.moduli.iter().map(|_| 1).collect::<Vec<i64>>())
    }

    pub fn elems(&self) -> impl Iterator<Item = RingElem> {
        (0..self.order()).map(RingElem)
    }

    pub fn residues(&self, x: RingElem) -> Vec<u32> {
        debug_assert!(x.0 < self.order());
        let mut code = x.0;
        let mut out = vec![0u32; self.moduli.len()];
        for (i, &n) in self.moduli.iter().enumerate().rev() {
            out[i] = (code % n as usize) as u32;
            code /= n as usize;
        }
        out
    }

    /// Encode a residue tuple, reducing each entry mod its modulus.
    pub fn encode_reduced(&self, residues: &[i64]) -> RingElem {
        debug_assert_eq!(residues.len(), self.moduli.len());
        let mut code = 0usize;
        for (&r, &n) in residues.iter().zip(&self.moduli) {
            let n = n as i64;
            code = code * n as usize + r.rem_euclid(n) as usize;
        }
        RingElem(code)
    }

    pub fn encode(&self, residues: &[i64]) -> Result<RingElem> {
        if residues.len() != self.moduli.len() {
            return Err(Error::input(format!(
                "element has {} components, ring has {}",
                residues.len(),
                self.moduli.len()
            )));
        }
        Ok(self.encode_reduced(residues))
    }

    fn zip_op(&self, x: RingElem, y: RingElem, f: impl Fn(i64, i64) -> i64) -> RingElem {
        let a = self.residues(x);
        let b = self.residues(y);
        let out: Vec<i64> = a
            .iter()
            .zip(&b)
            .map(|(&p, &q)| f(p as i64, q as i64))
            .collect();
        self.encode_reduced(&out)
    }

    pub fn add(&self, x: RingElem, y: RingElem) -> RingElem {
        self.zip_op(x, y, |a, b| a + b)
    }

    pub fn mul(&self, x: RingElem, y: RingElem) -> RingElem {
        self.zip_op(x, y, |a, b| a * b)
    }

    pub fn neg(&self, x: RingElem) -> RingElem {
        let out: Vec<i64> = self.residues(x).iter().map(|&a| -(a as i64)).collect();
        self.encode_reduced(&out)
    }

    pub fn label(&self, x: RingElem) -> String {
        let rs = self.residues(x);
        let inner: Vec<String> = rs.iter().map(|r| format!("{r}")).collect();
        format!("({})", inner.join(","))
    }

    /// The product ring `R1 x R2`, moduli concatenated. Element codes satisfy
    /// `code = r1.0 * other.order() + r2.0`.
    pub fn product(&self, other: &RingSpec) -> RingSpec {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        RingSpec { moduli }
    }
}

/// An ideal as a canonical element set. Generators, when known, are kept as
/// metadata only; equality and ordering look at the element set alone.
#[derive(Clone, Debug)]
pub struct Ideal {
    set: BitSet,
    gens: Option<Vec<RingElem>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set
    }
}
impl Eq for Ideal {}
impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.set.cmp(&other.set)
    }
}

impl Ideal {
    pub fn from_set(set: BitSet) -> Self {
        Ideal { set, gens: None }
    }

    pub fn set(&self) -> &BitSet {
        &self.set
    }

    pub fn gens(&self) -> Option<&[RingElem]> {
        self.gens.as_deref()
    }

    pub fn elems(&self) -> impl Iterator<Item = RingElem> + '_ {
        self.set.iter().map(RingElem)
    }

    pub fn contains(&self, x: RingElem) -> bool {
        self.set.contains(x.0)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.set.len() == 1
    }

    pub fn is_proper(&self, ring: &RingSpec) -> bool {
        self.set.len() < ring.order()
    }

    pub fn zero(ring: &RingSpec) -> Ideal {
        let mut set = BitSet::new(ring.order());
        set.insert(0);
        Ideal { set, gens: None }
    }

    pub fn unit(ring: &RingSpec) -> Ideal {
        Ideal {
            set: BitSet::full(ring.order()),
            gens: None,
        }
    }

    /// Smallest ideal containing `gens`: fixpoint closure under addition and
    /// multiplication by every ring element.
    pub fn generate(ring: &RingSpec, gens: &[RingElem]) -> Ideal {
        let n = ring.order();
        let mut set = BitSet::new(n);
        set.insert(0);
        // Scalar multiples of generators, then close under addition.
        let mut seed: Vec<RingElem> = Vec::new();
        for &g in gens {
            debug_assert!(g.0 < n);
            for r in ring.elems() {
                let m = ring.mul(r, g);
                if set.insert(m.0) {
                    seed.push(m);
                }
            }
        }
        let mut frontier = seed;
        while let Some(x) = frontier.pop() {
            for y in set.clone().iter() {
                let s = ring.add(x, RingElem(y));
                if set.insert(s.0) {
                    frontier.push(s);
                }
            }
        }
        Ideal {
            set,
            gens: Some(gens.to_vec()),
        }
    }

    pub fn sum(ring: &RingSpec, a: &Ideal, b: &Ideal) -> Ideal {
        // The element-wise sum set is already an ideal.
        let n = ring.order();
        let mut set = BitSet::new(n);
        for x in a.elems() {
            for y in b.elems() {
                set.insert(ring.add(x, y).0);
            }
        }
        Ideal { set, gens: None }
    }

    pub fn product(ring: &RingSpec, a: &Ideal, b: &Ideal) -> Ideal {
        let prods: Vec<RingElem> = a
            .elems()
            .flat_map(|x| b.elems().map(move |y| (x, y)))
            .map(|(x, y)| ring.mul(x, y))
            .collect();
        Ideal::generate(ring, &prods)
    }

    /// `I^k`, with `I^0 = R`.
    pub fn power(ring: &RingSpec, a: &Ideal, k: u32) -> Ideal {
        let mut acc = Ideal::unit(ring);
        for _ in 0..k {
            acc = Ideal::product(ring, &acc, a);
        }
        acc
    }

    /// Intersection of all powers `I^i`, `i >= 1`; the decreasing chain
    /// stabilizes in a finite ring.
    pub fn omega(ring: &RingSpec, a: &Ideal) -> Ideal {
        let mut prev = a.clone();
        loop {
            let next = Ideal::product(ring, &prev, a);
            if next == prev {
                return prev;
            }
            prev = next;
        }
    }

    pub fn intersect(a: &Ideal, b: &Ideal) -> Ideal {
        Ideal {
            set: a.set.intersect(&b.set),
            gens: None,
        }
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.set.is_subset(&other.set)
    }

    /// Complete duplicate-free ideal lattice, by closure-by-extension
    /// fixpoint from the zero ideal. Sorted by (size, set) for determinism.
    pub fn all_ideals(ring: &RingSpec, max_ideals: usize) -> Result<Vec<Ideal>> {
        let mut seen: BTreeSet<BitSet> = BTreeSet::new();
        let zero = Ideal::zero(ring);
        seen.insert(zero.set.clone());
        let mut queue: Vec<Ideal> = vec![zero];
        let mut out: Vec<Ideal> = Vec::new();
        while let Some(i) = queue.pop() {
            for x in ring.elems() {
                if i.contains(x) {
                    continue;
                }
                let mut gens: Vec<RingElem> = i.elems().collect();
                gens.push(x);
                let bigger = Ideal::generate(ring, &gens);
                if seen.insert(bigger.set.clone()) {
                    if seen.len() > max_ideals {
                        return Err(Error::resource(format!(
                            "ideal count exceeds cap {max_ideals}"
                        )));
                    }
                    queue.push(bigger);
                }
            }
            out.push(i);
        }
        out.sort_by(|a, b| (a.len(), &a.set).cmp(&(b.len(), &b.set)));
        Ok(out)
    }

    pub fn label(&self, ring: &RingSpec) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        if !self.is_proper(ring) {
            return String::from("R");
        }
        let gens = minimal_ideal_gens(ring, self);
        let parts: Vec<String> = gens.iter().map(|&g| ring.label(g)).collect();
        format!("<{}>", parts.join(","))
    }
}

/// Greedy minimal generating set, deterministic in element order.
pub fn minimal_ideal_gens(ring: &RingSpec, ideal: &Ideal) -> Vec<RingElem> {
    let mut gens: Vec<RingElem> = Vec::new();
    let mut span = Ideal::zero(ring);
    for x in ideal.elems() {
        if !span.contains(x) {
            gens.push(x);
            span = Ideal::sum(ring, &span, &Ideal::generate(ring, &[x]));
        }
    }
    gens
}

/// A multiplicatively closed subset, stored saturated (contains 1, closed
/// under products).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MultClosedSet {
    set: BitSet,
}

impl MultClosedSet {
    pub fn elems(&self) -> impl Iterator<Item = RingElem> + '_ {
        self.set.iter().map(RingElem)
    }

    pub fn contains(&self, x: RingElem) -> bool {
        self.set.contains(x.0)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn label(&self, ring: &RingSpec) -> String {
        let parts: Vec<String> = self.elems().map(|x| ring.label(x)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Multiplicative closure of `seed ∪ {1}`.
pub fn saturate(ring: &RingSpec, seed: &[RingElem]) -> Result<MultClosedSet> {
    if seed.is_empty() {
        return Err(Error::input("multiplicative set needs a nonempty seed"));
    }
    let mut set = BitSet::new(ring.order());
    set.insert(ring.one().0);
    let mut frontier: Vec<RingElem> = vec![ring.one()];
    for &s in seed {
        if set.insert(s.0) {
            frontier.push(s);
        }
    }
    while let Some(x) = frontier.pop() {
        for y in set.clone().iter() {
            let p = ring.mul(x, RingElem(y));
            if set.insert(p.0) {
                frontier.push(p);
            }
        }
    }
    Ok(MultClosedSet { set })
}

/// The idempotent `e` of a saturated set: product of the idempotent powers of
/// all members. Every `s` in the set acts invertibly on `eR`.
pub fn minimal_idempotent(ring: &RingSpec, s: &MultClosedSet) -> RingElem {
    let mut e = ring.one();
    for x in s.elems() {
        e = ring.mul(e, idempotent_power(ring, x));
    }
    e
}

fn idempotent_power(ring: &RingSpec, x: RingElem) -> RingElem {
    let mut p = x;
    for _ in 0..=2 * ring.order() {
        if ring.mul(p, p) == p {
            return p;
        }
        p = ring.mul(p, x);
    }
    unreachable!("finite commutative monoid always has an idempotent power");
}

/// The phi-function family on the ideal lattice `S(R) -> S(R) ∪ {∅}`.
/// `None` is the ∅ marker.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PhiFunction {
    Empty,
    Zero,
    Identity,
    Power(u32),
    Omega,
    Custom(BTreeMap<Ideal, Option<Ideal>>),
}

impl PhiFunction {
    pub fn tag(&self) -> String {
        match self {
            PhiFunction::Empty => String::from("empty"),
            PhiFunction::Zero => String::from("zero"),
            PhiFunction::Identity => String::from("identity"),
            PhiFunction::Power(i) => format!("pow:{i}"),
            PhiFunction::Omega => String::from("omega"),
            PhiFunction::Custom(_) => String::from("custom"),
        }
    }

    pub fn from_tag(tag: &str) -> Result<PhiFunction> {
        match tag {
            "empty" => Ok(PhiFunction::Empty),
            "zero" => Ok(PhiFunction::Zero),
            "identity" => Ok(PhiFunction::Identity),
            "omega" => Ok(PhiFunction::Omega),
            _ => {
                if let Some(i) = tag.strip_prefix("pow:") {
                    let i: u32 = i
                        .parse()
                        .map_err(|_| Error::input(format!("bad phi tag {tag:?}")))?;
                    if i == 0 {
                        return Err(Error::input("pow:i needs i >= 1"));
                    }
                    return Ok(PhiFunction::Power(i));
                }
                Err(Error::input(format!("unknown phi tag {tag:?}")))
            }
        }
    }
}

/// Evaluate a phi-function on an ideal; `None` is the ∅ marker.
pub fn eval_phi(ring: &RingSpec, phi: &PhiFunction, p: &Ideal) -> Result<Option<Ideal>> {
    Ok(match phi {
        PhiFunction::Empty => None,
        PhiFunction::Zero => Some(Ideal::zero(ring)),
        PhiFunction::Identity => Some(p.clone()),
        PhiFunction::Power(i) => Some(Ideal::power(ring, p, *i)),
        PhiFunction::Omega => Some(Ideal::omega(ring, p)),
        PhiFunction::Custom(table) => table
            .get(p)
            .cloned()
            .ok_or_else(|| Error::input("custom phi table has no entry for this ideal"))?,
    })
}

/// Anderson–Bataineh phi-primality: `rs ∈ P \ φ(P)` forces `r ∈ P` or
/// `s ∈ P`. The ∅ marker excludes nothing. Returns the first refuting pair.
pub fn is_phi_prime_ideal(
    ring: &RingSpec,
    p: &Ideal,
    phi: &PhiFunction,
) -> Result<(bool, Option<(RingElem, RingElem)>)> {
    if !p.is_proper(ring) {
        return Err(Error::input("phi-primality needs a proper ideal"));
    }
    let phi_p = eval_phi(ring, phi, p)?;
    for r in ring.elems() {
        for s in ring.elems() {
            let rs = ring.mul(r, s);
            if !p.contains(rs) {
                continue;
            }
            if let Some(fp) = &phi_p {
                if fp.contains(rs) {
                    continue;
                }
            }
            if !p.contains(r) && !p.contains(s) {
                return Ok((false, Some((r, s))));
            }
        }
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> RingSpec {
        RingSpec::new(&[n]).unwrap()
    }

    #[test]
    fn ring_make() {
        assert_eq!(z(6).order(), 6);
        assert_eq!(RingSpec::new(&[6, 6]).unwrap().order(), 36);
        assert_eq!(z(8).order(), 8);
        assert!(RingSpec::new(&[]).is_err());
        assert!(RingSpec::new(&[1]).is_err());
    }

    #[test]
    fn elem_arith() {
        let r6 = z(6);
        assert_eq!(
            r6.add(r6.encode(&[3]).unwrap(), r6.encode(&[5]).unwrap()),
            r6.encode(&[2]).unwrap()
        );
        let r66 = RingSpec::new(&[6, 6]).unwrap();
        assert_eq!(
            r66.mul(r66.encode(&[2, 1]).unwrap(), r66.encode(&[3, 3]).unwrap()),
            r66.encode(&[0, 3]).unwrap()
        );
        assert_eq!(
            r66.neg(r66.encode(&[1, 0]).unwrap()),
            r66.encode(&[5, 0]).unwrap()
        );
    }

    fn elem_codes(i: &Ideal) -> Vec<usize> {
        i.elems().map(|x| x.0).collect()
    }

    #[test]
    fn ideal_generate_examples() {
        let r6 = z(6);
        assert_eq!(elem_codes(&Ideal::generate(&r6, &[RingElem(2)])), [0, 2, 4]);
        assert_eq!(elem_codes(&Ideal::generate(&r6, &[])), [0]);
        let r8 = z(8);
        assert_eq!(
            elem_codes(&Ideal::generate(&r8, &[RingElem(2)])),
            [0, 2, 4, 6]
        );
    }

    /// Independent oracle for ideals of Z/n: the multiples of each divisor.
    fn ideals_of_zn_by_divisors(n: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| (0..n).filter(|x| x % d == 0).collect())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn all_ideals_matches_divisor_lattice() {
        for n in 2..=16u32 {
            let ring = z(n);
            let got = Ideal::all_ideals(&ring, 4096).unwrap();
            let mut got_sets: Vec<Vec<usize>> = got.iter().map(elem_codes).collect();
            got_sets.sort();
            assert_eq!(got_sets, ideals_of_zn_by_divisors(n as usize), "n={n}");
        }
        // Known small counts.
        assert_eq!(Ideal::all_ideals(&z(6), 4096).unwrap().len(), 4);
        assert_eq!(Ideal::all_ideals(&z(8), 4096).unwrap().len(), 4);
        assert_eq!(Ideal::all_ideals(&z(2), 4096).unwrap().len(), 2);
    }

    #[test]
    fn ideal_ops_examples() {
        let r8 = z(8);
        let i = Ideal::generate(&r8, &[RingElem(2)]);
        assert_eq!(elem_codes(&Ideal::power(&r8, &i, 2)), [0, 4]);
        assert_eq!(elem_codes(&Ideal::power(&r8, &i, 3)), [0]);
        assert_eq!(elem_codes(&Ideal::power(&r8, &i, 0)), [0, 1, 2, 3, 4, 5, 6, 7]);
        let r6 = z(6);
        let a = Ideal::generate(&r6, &[RingElem(3)]);
        let b = Ideal::generate(&r6, &[RingElem(2)]);
        assert_eq!(Ideal::sum(&r6, &a, &b), Ideal::unit(&r6));
    }

    #[test]
    fn power_chain_descends_and_stabilizes() {
        for n in [6u32, 8, 12, 16] {
            let ring = z(n);
            for i in Ideal::all_ideals(&ring, 4096).unwrap() {
                let mut prev = Ideal::power(&ring, &i, 1);
                for k in 2..=(ring.order() as u32 + 1) {
                    let next = Ideal::power(&ring, &i, k);
                    assert!(next.is_subset(&prev));
                    prev = next;
                }
                assert_eq!(prev, Ideal::omega(&ring, &i));
            }
        }
    }

    #[test]
    fn eval_phi_examples() {
        let r6 = z(6);
        let p = Ideal::generate(&r6, &[RingElem(2)]);
        assert_eq!(eval_phi(&r6, &PhiFunction::Identity, &p).unwrap(), Some(p.clone()));
        assert_eq!(eval_phi(&r6, &PhiFunction::Empty, &p).unwrap(), None);
        let r8 = z(8);
        let q = Ideal::generate(&r8, &[RingElem(2)]);
        assert_eq!(
            elem_codes(&eval_phi(&r8, &PhiFunction::Power(2), &q).unwrap().unwrap()),
            [0, 4]
        );
    }

    #[test]
    fn phi_prime_examples() {
        let r6 = z(6);
        let p2 = Ideal::generate(&r6, &[RingElem(2)]);
        assert_eq!(is_phi_prime_ideal(&r6, &p2, &PhiFunction::Empty).unwrap().0, true);
        let zero = Ideal::zero(&r6);
        let (ok, w) = is_phi_prime_ideal(&r6, &zero, &PhiFunction::Empty).unwrap();
        assert!(!ok);
        assert_eq!(w, Some((RingElem(2), RingElem(3))));
        assert!(is_phi_prime_ideal(&r6, &zero, &PhiFunction::Identity).unwrap().0);
        assert!(is_phi_prime_ideal(&r6, &Ideal::unit(&r6), &PhiFunction::Empty).is_err());
    }

    /// Textbook primality by brute force over the quotient: no zero divisors.
    fn is_prime_textbook(ring: &RingSpec, p: &Ideal) -> bool {
        if !p.is_proper(ring) {
            return false;
        }
        for r in ring.elems() {
            for s in ring.elems() {
                if p.contains(ring.mul(r, s)) && !p.contains(r) && !p.contains(s) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn phi_empty_is_textbook_primality() {
        for n in [4u32, 6, 8, 9, 12] {
            let ring = z(n);
            for i in Ideal::all_ideals(&ring, 4096).unwrap() {
                if !i.is_proper(&ring) {
                    continue;
                }
                assert_eq!(
                    is_phi_prime_ideal(&ring, &i, &PhiFunction::Empty).unwrap().0,
                    is_prime_textbook(&ring, &i)
                );
                // Identity phi makes everything vacuously prime.
                assert!(is_phi_prime_ideal(&ring, &i, &PhiFunction::Identity).unwrap().0);
            }
        }
    }

    #[test]
    fn saturate_and_idempotent() {
        let r6 = z(6);
        let s3 = saturate(&r6, &[RingElem(3)]).unwrap();
        assert_eq!(s3.elems().map(|x| x.0).collect::<Vec<_>>(), [1, 3]);
        assert_eq!(minimal_idempotent(&r6, &s3), RingElem(3));
        let s2 = saturate(&r6, &[RingElem(2)]).unwrap();
        assert_eq!(s2.elems().map(|x| x.0).collect::<Vec<_>>(), [1, 2, 4]);
        assert_eq!(minimal_idempotent(&r6, &s2), RingElem(4));
        let s1 = saturate(&r6, &[RingElem(1)]).unwrap();
        assert_eq!(s1.len(), 1);
        assert_eq!(minimal_idempotent(&r6, &s1), RingElem(1));
    }

    #[test]
    fn idempotent_acts_invertibly() {
        for n in [6u32, 8, 10, 12, 15] {
            let ring = z(n);
            for seed in ring.elems() {
                if seed == ring.zero() {
                    continue;
                }
                let s = saturate(&ring, &[seed]).unwrap();
                let e = minimal_idempotent(&ring, &s);
                assert_eq!(ring.mul(e, e), e);
                // every s acts invertibly on eR
                for x in s.elems() {
                    let target = e;
                    let ok = ring
                        .elems()
                        .any(|t| ring.mul(ring.mul(x, t), e) == target);
                    assert!(ok, "n={n} x={x:?}");
                }
            }
        }
    }

    #[test]
    fn ideal_closure_idempotence() {
        for n in [6u32, 8, 12] {
            let ring = z(n);
            for i in Ideal::all_ideals(&ring, 4096).unwrap() {
                let elems: Vec<RingElem> = i.elems().collect();
                assert_eq!(Ideal::generate(&ring, &elems), i);
            }
        }
    }
}
