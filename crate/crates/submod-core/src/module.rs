//! Finite modules over `RingSpec` rings.
//!
//! A `Module` is a carrier of element codes with explicit addition and
//! scalar-action tables. Direct sums of cyclic groups build the tables from
//! residue arithmetic; quotients, localizations, products, and submodule
//! carriers derive them from a parent module, so every predicate works on
//! any of them uniformly.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ring::{Ideal, MultClosedSet, RingElem, RingSpec};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ModElem(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Origin {
    Direct,
    Quotient,
    Localized,
    Product,
    Carrier,
}

#[derive(Clone, Debug)]
pub struct Module {
    ring: RingSpec,
    order: usize,
    add: Vec<u32>,
    act: Vec<u32>,
    labels: Vec<String>,
    origin: Origin,
    /// `(orders, coords)` for direct-sum modules; gives standard generators.
    direct_shape: Option<(Vec<u32>, Vec<u32>)>,
}

impl Module {
    /// Direct sum of cyclic groups `Z/d_j`, where the ring coordinate
    /// `coords[j]` (1-based) acts on component `j`. Requires `d_j | n_{c_j}`.
    pub fn direct(ring: RingSpec, orders: &[u32], coords: &[u32]) -> Result<Module> {
        if orders.is_empty() || orders.len() != coords.len() {
            return Err(Error::input("module needs matching orders and coords"));
        }
        let k = ring.moduli().len() as u32;
        let mut order: usize = 1;
        for (&d, &c) in orders.iter().zip(coords) {
            if d < 1 {
                return Err(Error::input("component order must be >= 1"));
            }
            if c < 1 || c > k {
                return Err(Error::input(format!("coord {c} out of range 1..={k}")));
            }
            let n = ring.moduli()[(c - 1) as usize];
            if n % d != 0 {
                return Err(Error::input(format!(
                    "component order {d} does not divide ring modulus {n}"
                )));
            }
            order = order
                .checked_mul(d as usize)
                .filter(|&o| o <= 1 << 24)
                .ok_or_else(|| Error::resource("module order too large"))?;
        }

        let decode = |code: usize| -> Vec<u32> {
            let mut c = code;
            let mut out = vec![0u32; orders.len()];
            for (j, &d) in orders.iter().enumerate().rev() {
                out[j] = (c % d as usize) as u32;
                c /= d as usize;
            }
            out
        };
        let encode = |res: &[u64]| -> usize {
            let mut code = 0usize;
            for (&m, &d) in res.iter().zip(orders) {
                code = code * d as usize + (m % d as u64) as usize;
            }
            code
        };

        let mut add = vec![0u32; order * order];
        for a in 0..order {
            let ra = decode(a);
            for b in 0..order {
                let rb = decode(b);
                let sum: Vec<u64> = ra
                    .iter()
                    .zip(&rb)
                    .map(|(&x, &y)| x as u64 + y as u64)
                    .collect();
                add[a * order + b] = encode(&sum) as u32;
            }
        }
        let rk = ring.order();
        let mut act = vec![0u32; rk * order];
        for r in 0..rk {
            let res = ring.residues(RingElem(r));
            for m in 0..order {
                let rm = decode(m);
                let img: Vec<u64> = rm
                    .iter()
                    .zip(coords)
                    .map(|(&x, &c)| x as u64 * res[(c - 1) as usize] as u64)
                    .collect();
                act[r * order + m] = encode(&img) as u32;
            }
        }
        let labels = (0..order)
            .map(|m| {
                let parts: Vec<String> = decode(m).iter().map(|x| format!("{x}")).collect();
                format!("({})", parts.join(","))
            })
            .collect();

        let module = Module {
            ring,
            order,
            add,
            act,
            labels,
            origin: Origin::Direct,
            direct_shape: Some((orders.to_vec(), coords.to_vec())),
        };
        module.validate()?;
        Ok(module)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn direct_shape(&self) -> Option<(&[u32], &[u32])> {
        self.direct_shape
            .as_ref()
            .map(|(o, c)| (o.as_slice(), c.as_slice()))
    }

    pub fn elems(&self) -> impl Iterator<Item = ModElem> {
        (0..self.order).map(ModElem)
    }

    pub fn zero_elem(&self) -> ModElem {
        ModElem(0)
    }

    pub fn add_elem(&self, a: ModElem, b: ModElem) -> ModElem {
        ModElem(self.add[a.0 * self.order + b.0] as usize)
    }

    pub fn act(&self, r: RingElem, m: ModElem) -> ModElem {
        ModElem(self.act[r.0 * self.order + m.0] as usize)
    }

    pub fn neg_elem(&self, m: ModElem) -> ModElem {
        self.act(self.ring.neg(self.ring.one()), m)
    }

    pub fn label(&self, m: ModElem) -> &str {
        &self.labels[m.0]
    }

    /// Module-axiom spot check: zero laws, commutativity, inverses, and the
    /// four action compatibilities, fully when small, strided when large.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        let rk = self.ring.order();
        let fail = |msg: &str| Err(Error::input(format!("module axioms violated: {msg}")));
        let zero = self.zero_elem();
        let one = self.ring.one();
        let estep = if n <= 64 { 1 } else { n / 64 + 1 };
        let rstep = if rk <= 64 { 1 } else { rk / 64 + 1 };
        for a in (0..n).step_by(estep) {
            let a = ModElem(a);
            if self.add_elem(a, zero) != a || self.act(one, a) != a {
                return fail("identity laws");
            }
            if self.add_elem(a, self.neg_elem(a)) != zero {
                return fail("additive inverse");
            }
            for b in (0..n).step_by(estep) {
                let b = ModElem(b);
                if self.add_elem(a, b) != self.add_elem(b, a) {
                    return fail("commutativity");
                }
                for c in (0..n).step_by(estep) {
                    let c = ModElem(c);
                    if self.add_elem(self.add_elem(a, b), c) != self.add_elem(a, self.add_elem(b, c))
                    {
                        return fail("associativity");
                    }
                }
                for r in (0..rk).step_by(rstep) {
                    let r = RingElem(r);
                    if self.act(r, self.add_elem(a, b))
                        != self.add_elem(self.act(r, a), self.act(r, b))
                    {
                        return fail("action distributes over addition");
                    }
                }
            }
            for r in (0..rk).step_by(rstep) {
                let r = RingElem(r);
                for s in (0..rk).step_by(rstep) {
                    let s = RingElem(s);
                    if self.act(self.ring.add(r, s), a)
                        != self.add_elem(self.act(r, a), self.act(s, a))
                    {
                        return fail("action distributes over ring addition");
                    }
                    if self.act(self.ring.mul(r, s), a) != self.act(r, self.act(s, a)) {
                        return fail("action is multiplicative");
                    }
                }
            }
        }
        Ok(())
    }

    // ------------------------------------------------------------------
    // Submodules
    // ------------------------------------------------------------------

    pub fn zero_sub(&self) -> Submodule {
        let mut set = BitSet::new(self.order);
        set.insert(0);
        Submodule { set, gens: None }
    }

    pub fn full_sub(&self) -> Submodule {
        Submodule {
            set: BitSet::full(self.order),
            gens: None,
        }
    }

    /// Smallest submodule containing `gens`: fixpoint closure under addition
    /// and every scalar action.
    pub fn submodule_generate(&self, gens: &[ModElem]) -> Submodule {
        let mut set = BitSet::new(self.order);
        set.insert(0);
        let mut frontier: Vec<ModElem> = Vec::new();
        for &g in gens {
            debug_assert!(g.0 < self.order);
            for r in self.ring.elems() {
                let m = self.act(r, g);
                if set.insert(m.0) {
                    frontier.push(m);
                }
            }
        }
        while let Some(x) = frontier.pop() {
            for y in set.clone().iter() {
                let s = self.add_elem(x, ModElem(y));
                if set.insert(s.0) {
                    frontier.push(s);
                }
            }
        }
        Submodule {
            set,
            gens: Some(gens.to_vec()),
        }
    }

    pub fn is_submodule(&self, s: &Submodule) -> bool {
        if s.set.universe() != self.order || !s.set.contains(0) {
            return false;
        }
        for x in s.elems() {
            for y in s.elems() {
                if !s.set.contains(self.add_elem(x, y).0) {
                    return false;
                }
            }
            for r in self.ring.elems() {
                if !s.set.contains(self.act(r, x).0) {
                    return false;
                }
            }
        }
        true
    }

    /// Complete submodule lattice by closure-by-extension fixpoint, sorted by
    /// (size, set).
    pub fn all_submodules(&self, max_submodules: usize) -> Result<Vec<Submodule>> {
        let mut seen: BTreeSet<BitSet> = BTreeSet::new();
        let zero = self.zero_sub();
        seen.insert(zero.set.clone());
        let mut queue: Vec<Submodule> = vec![zero];
        let mut out: Vec<Submodule> = Vec::new();
        while let Some(n) = queue.pop() {
            for x in self.elems() {
                if n.contains(x) {
                    continue;
                }
                let mut gens: Vec<ModElem> = n.elems().collect();
                gens.push(x);
                let bigger = self.submodule_generate(&gens);
                if seen.insert(bigger.set.clone()) {
                    if seen.len() > max_submodules {
                        return Err(Error::resource(format!(
                            "submodule count exceeds cap {max_submodules}"
                        )));
                    }
                    queue.push(bigger);
                }
            }
            out.push(n);
        }
        out.sort_by(|a, b| (a.len(), &a.set).cmp(&(b.len(), &b.set)));
        Ok(out)
    }

    /// `rN` for a single scalar; already a submodule.
    pub fn scalar_image(&self, r: RingElem, n: &Submodule) -> Submodule {
        let mut set = BitSet::new(self.order);
        for x in n.elems() {
            set.insert(self.act(r, x).0);
        }
        Submodule { set, gens: None }
    }

    /// `IN`: submodule generated by all products `i·x`.
    pub fn ideal_image(&self, i: &Ideal, n: &Submodule) -> Submodule {
        // {i·x} is closed under scalars; only addition needs closing.
        let mut set = BitSet::new(self.order);
        set.insert(0);
        let mut frontier: Vec<ModElem> = Vec::new();
        for r in i.elems() {
            for x in n.elems() {
                let m = self.act(r, x);
                if set.insert(m.0) {
                    frontier.push(m);
                }
            }
        }
        while let Some(x) = frontier.pop() {
            for y in set.clone().iter() {
                let s = self.add_elem(x, ModElem(y));
                if set.insert(s.0) {
                    frontier.push(s);
                }
            }
        }
        Submodule { set, gens: None }
    }

    /// `(N :_M I) = {m : im ∈ N for all i ∈ I}`; the ∅ marker (None) gives M.
    pub fn colon_module(&self, n: &Submodule, i: Option<&Ideal>) -> Submodule {
        let Some(i) = i else {
            return self.full_sub();
        };
        let mut set = BitSet::new(self.order);
        for m in self.elems() {
            if i.elems().all(|r| n.set.contains(self.act(r, m).0)) {
                set.insert(m.0);
            }
        }
        Submodule { set, gens: None }
    }

    /// `(N :_M a)` for a single scalar.
    pub fn colon_module_elem(&self, n: &Submodule, a: RingElem) -> Submodule {
        let mut set = BitSet::new(self.order);
        for m in self.elems() {
            if n.set.contains(self.act(a, m).0) {
                set.insert(m.0);
            }
        }
        Submodule { set, gens: None }
    }

    /// `(K :_R N) = {r : rN ⊆ K}`; an ideal of R. The ∅ marker for N gives R.
    pub fn colon_ring(&self, k: &Submodule, n: Option<&Submodule>) -> Ideal {
        let Some(n) = n else {
            return Ideal::unit(&self.ring);
        };
        let mut set = BitSet::new(self.ring.order());
        for r in self.ring.elems() {
            if n.elems().all(|x| k.set.contains(self.act(r, x).0)) {
                set.insert(r.0);
            }
        }
        Ideal::from_set(set)
    }

    pub fn annihilator(&self, n: &Submodule) -> Ideal {
        self.colon_ring(&self.zero_sub(), Some(n))
    }

    pub fn sub_sum(&self, a: &Submodule, b: &Submodule) -> Submodule {
        // The element-wise sum set is already a submodule.
        let mut set = BitSet::new(self.order);
        for x in a.elems() {
            for y in b.elems() {
                set.insert(self.add_elem(x, y).0);
            }
        }
        Submodule { set, gens: None }
    }

    pub fn sub_intersect(&self, a: &Submodule, b: &Submodule) -> Submodule {
        Submodule {
            set: a.set.intersect(&b.set),
            gens: None,
        }
    }

    /// Greedy minimal generating set, deterministic in element order.
    pub fn minimal_sub_gens(&self, n: &Submodule) -> Vec<ModElem> {
        let mut gens: Vec<ModElem> = Vec::new();
        let mut span = self.zero_sub();
        for x in n.elems() {
            if !span.contains(x) {
                gens.push(x);
                let mut g2 = gens.clone();
                g2.sort();
                span = self.submodule_generate(&g2);
            }
        }
        gens
    }

    pub fn sub_label(&self, n: &Submodule) -> String {
        if n.len() == 1 {
            return String::from("0");
        }
        if n.len() == self.order {
            return String::from("M");
        }
        let parts: Vec<String> = self
            .minimal_sub_gens(n)
            .iter()
            .map(|&g| String::from(self.label(g)))
            .collect();
        format!("<{}>", parts.join(","))
    }

    // ------------------------------------------------------------------
    // Completely irreducible submodules
    // ------------------------------------------------------------------

    /// Finite-lattice criterion: N proper and the intersection of all strict
    /// over-submodules differs from N.
    pub fn is_completely_irreducible(&self, n: &Submodule, subs: &[Submodule]) -> bool {
        if n.len() == self.order {
            return false;
        }
        let mut meet = self.full_sub();
        for s in subs {
            if n.set.is_subset(&s.set) && s.set != n.set {
                meet = self.sub_intersect(&meet, s);
            }
        }
        meet.set != n.set
    }

    /// All completely irreducible submodules containing N; their intersection
    /// is N.
    pub fn ci_decomposition(&self, n: &Submodule, subs: &[Submodule]) -> Result<Vec<Submodule>> {
        if n.len() == self.order {
            return Err(Error::input("ci_decomposition needs a proper submodule"));
        }
        let cis: Vec<Submodule> = subs
            .iter()
            .filter(|s| self.is_completely_irreducible(s, subs) && n.set.is_subset(&s.set))
            .cloned()
            .collect();
        let mut meet = self.full_sub();
        for s in &cis {
            meet = self.sub_intersect(&meet, s);
        }
        assert_eq!(
            meet.set, n.set,
            "completely irreducible decomposition must intersect to N"
        );
        Ok(cis)
    }

    /// Multiplication module test: N = (N :_R M)M for every N. Returns the
    /// first violating N on false.
    pub fn is_multiplication(&self, subs: &[Submodule]) -> (bool, Option<Submodule>) {
        let full = self.full_sub();
        for n in subs {
            let i = self.colon_ring(n, Some(&full));
            if self.ideal_image(&i, &full) != *n {
                return (false, Some(n.clone()));
            }
        }
        (true, None)
    }

    /// Comultiplication module test: N = (0 :_M Ann_R(N)) for every N.
    pub fn is_comultiplication(&self, subs: &[Submodule]) -> (bool, Option<Submodule>) {
        for n in subs {
            let ann = self.annihilator(n);
            if self.colon_module(&self.zero_sub(), Some(&ann)) != *n {
                return (false, Some(n.clone()));
            }
        }
        (true, None)
    }

    // ------------------------------------------------------------------
    // Derived module views
    // ------------------------------------------------------------------

    /// Quotient `M/K`. Returns the quotient module and the projection table
    /// `m ↦ m + K` (indexed by parent element code).
    pub fn quotient(&self, k: &Submodule) -> Result<(Module, Vec<ModElem>)> {
        if !self.is_submodule(k) {
            return Err(Error::input("quotient kernel is not a submodule"));
        }
        let qorder = self.order / k.len();
        let mut proj: Vec<Option<usize>> = vec![None; self.order];
        let mut reps: Vec<usize> = Vec::with_capacity(qorder);
        for m in 0..self.order {
            if proj[m].is_some() {
                continue;
            }
            let q = reps.len();
            reps.push(m);
            for x in k.elems() {
                proj[self.add_elem(ModElem(m), x).0] = Some(q);
            }
        }
        debug_assert_eq!(reps.len(), qorder);
        let proj: Vec<ModElem> = proj.into_iter().map(|q| ModElem(q.unwrap())).collect();

        let mut add = vec![0u32; qorder * qorder];
        for (a, &ra) in reps.iter().enumerate() {
            for (b, &rb) in reps.iter().enumerate() {
                add[a * qorder + b] = proj[self.add_elem(ModElem(ra), ModElem(rb)).0].0 as u32;
            }
        }
        let rk = self.ring.order();
        let mut act = vec![0u32; rk * qorder];
        for r in 0..rk {
            for (a, &ra) in reps.iter().enumerate() {
                act[r * qorder + a] = proj[self.act(RingElem(r), ModElem(ra)).0].0 as u32;
            }
        }
        let labels = reps
            .iter()
            .map(|&m| format!("{}+K", self.labels[m]))
            .collect();
        let q = Module {
            ring: self.ring.clone(),
            order: qorder,
            add,
            act,
            labels,
            origin: Origin::Quotient,
            direct_shape: None,
        };
        q.validate()?;
        Ok((q, proj))
    }

    /// Image of a submodule under an element-code table (projection or
    /// localization map).
    pub fn push_through(&self, table: &[ModElem], target_order: usize, n: &Submodule) -> Submodule {
        let mut set = BitSet::new(target_order);
        for x in n.elems() {
            set.insert(table[x.0].0);
        }
        Submodule { set, gens: None }
    }

    /// Preimage of a target submodule under an element-code table.
    pub fn pull_back(&self, table: &[ModElem], n: &Submodule) -> Submodule {
        let mut set = BitSet::new(self.order);
        for m in 0..self.order {
            if n.set.contains(table[m].0) {
                set.insert(m);
            }
        }
        Submodule { set, gens: None }
    }

    /// The submodules of `M/K` correspond bijectively to the submodules of M
    /// containing K; this is the upward leg (preimage under the projection).
    pub fn quotient_lift(&self, proj: &[ModElem], qsub: &Submodule) -> Submodule {
        self.pull_back(proj, qsub)
    }

    /// A submodule as a module in its own right. Returns the carrier module
    /// and the inclusion table (carrier code ↦ parent code).
    pub fn restrict(&self, n: &Submodule) -> Result<(Module, Vec<ModElem>)> {
        if !self.is_submodule(n) {
            return Err(Error::input("restriction carrier is not a submodule"));
        }
        self.carrier_on(n.elems().collect(), Origin::Carrier)
    }

    fn carrier_on(&self, carrier: Vec<ModElem>, origin: Origin) -> Result<(Module, Vec<ModElem>)> {
        let order = carrier.len();
        let mut index: Vec<Option<usize>> = vec![None; self.order];
        for (i, &m) in carrier.iter().enumerate() {
            index[m.0] = Some(i);
        }
        let look = |m: ModElem| -> u32 { index[m.0].expect("carrier not closed") as u32 };
        let mut add = vec![0u32; order * order];
        for (a, &ma) in carrier.iter().enumerate() {
            for (b, &mb) in carrier.iter().enumerate() {
                add[a * order + b] = look(self.add_elem(ma, mb));
            }
        }
        let rk = self.ring.order();
        let mut act = vec![0u32; rk * order];
        for r in 0..rk {
            for (a, &ma) in carrier.iter().enumerate() {
                act[r * order + a] = look(self.act(RingElem(r), ma));
            }
        }
        let labels = carrier.iter().map(|&m| self.labels[m.0].clone()).collect();
        let m = Module {
            ring: self.ring.clone(),
            order,
            add,
            act,
            labels,
            origin,
            direct_shape: None,
        };
        m.validate()?;
        Ok((m, carrier))
    }

    /// Localization at a saturated set: with e its idempotent, the carrier is
    /// eM and the map is m ↦ em. Returns the localized module and the map
    /// table (parent code ↦ localized code).
    pub fn localize(&self, s: &MultClosedSet) -> Result<(Module, Vec<ModElem>)> {
        let e = crate::ring::minimal_idempotent(&self.ring, s);
        let image = self.scalar_image(e, &self.full_sub());
        let carrier: Vec<ModElem> = image.elems().collect();
        let (loc, incl) = self.carrier_on(carrier, Origin::Localized)?;
        let mut index: Vec<usize> = vec![0; self.order];
        for (i, &m) in incl.iter().enumerate() {
            index[m.0] = i;
        }
        let map: Vec<ModElem> = (0..self.order)
            .map(|m| ModElem(index[self.act(e, ModElem(m)).0]))
            .collect();

        // Contract: every s acts bijectively on the localized carrier, and the
        // kernel of the map is exactly {m : sm = 0 for some s in S}.
        for x in s.elems() {
            let mut hit = BitSet::new(loc.order);
            for m in loc.elems() {
                hit.insert(loc.act(x, m).0);
            }
            assert_eq!(hit.len(), loc.order, "S must act bijectively on S^-1 M");
        }
        for m in self.elems() {
            let killed = s.elems().any(|x| self.act(x, m) == self.zero_elem());
            assert_eq!(
                map[m.0] == ModElem(0),
                killed,
                "localization kernel must be the S-torsion"
            );
        }
        Ok((loc, map))
    }

    /// Product module `M1 x M2` over the product ring. Element codes satisfy
    /// `code = a * m2.order() + b`.
    pub fn product(m1: &Module, m2: &Module) -> Result<Module> {
        let ring = m1.ring.product(&m2.ring);
        let o1 = m1.order;
        let o2 = m2.order;
        let order = o1
            .checked_mul(o2)
            .filter(|&o| o <= 1 << 24)
            .ok_or_else(|| Error::resource("product module too large"))?;
        let code = |a: usize, b: usize| a * o2 + b;
        let mut add = vec![0u32; order * order];
        for a1 in 0..o1 {
            for b1 in 0..o2 {
                for a2 in 0..o1 {
                    for b2 in 0..o2 {
                        let s1 = m1.add_elem(ModElem(a1), ModElem(a2)).0;
                        let s2 = m2.add_elem(ModElem(b1), ModElem(b2)).0;
                        add[code(a1, b1) * order + code(a2, b2)] = code(s1, s2) as u32;
                    }
                }
            }
        }
        let rk = ring.order();
        let r2 = m2.ring.order();
        let mut act = vec![0u32; rk * order];
        for r in 0..rk {
            let ra = RingElem(r / r2);
            let rb = RingElem(r % r2);
            for a in 0..o1 {
                for b in 0..o2 {
                    let i1 = m1.act(ra, ModElem(a)).0;
                    let i2 = m2.act(rb, ModElem(b)).0;
                    act[r * order + code(a, b)] = code(i1, i2) as u32;
                }
            }
        }
        let labels = (0..order)
            .map(|m| merge_labels(&m1.labels[m / o2], &m2.labels[m % o2]))
            .collect();
        let m = Module {
            ring,
            order,
            add,
            act,
            labels,
            origin: Origin::Product,
            direct_shape: None,
        };
        m.validate()?;
        Ok(m)
    }
}

fn merge_labels(a: &str, b: &str) -> String {
    let strip = |s: &str| {
        s.strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .map(String::from)
    };
    match (strip(a), strip(b)) {
        (Some(x), Some(y)) => format!("({x},{y})"),
        _ => format!("{a}|{b}"),
    }
}

/// Split a submodule of a product module into its component projections.
/// Returns `(N1, N2)`; `N = N1 x N2` holds exactly when
/// `join == N` for `join = product_join(..)`.
pub fn product_split(o1: usize, o2: usize, n: &Submodule) -> (Submodule, Submodule) {
    let mut s1 = BitSet::new(o1);
    let mut s2 = BitSet::new(o2);
    for x in n.elems() {
        s1.insert(x.0 / o2);
        s2.insert(x.0 % o2);
    }
    (Submodule { set: s1, gens: None }, Submodule { set: s2, gens: None })
}

pub fn product_join(o2: usize, n1: &Submodule, n2: &Submodule) -> Submodule {
    let mut set = BitSet::new(n1.set.universe() * o2);
    for a in n1.elems() {
        for b in n2.elems() {
            set.insert(a.0 * o2 + b.0);
        }
    }
    Submodule { set, gens: None }
}

/// A submodule as a canonical element set; generators are metadata only.
#[derive(Clone, Debug)]
pub struct Submodule {
    set: BitSet,
    gens: Option<Vec<ModElem>>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set
    }
}
impl Eq for Submodule {}
impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.set.cmp(&other.set)
    }
}

impl Submodule {
    pub fn from_set(set: BitSet) -> Self {
        Submodule { set, gens: None }
    }

    pub fn set(&self) -> &BitSet {
        &self.set
    }

    pub fn gens(&self) -> Option<&[ModElem]> {
        self.gens.as_deref()
    }

    pub fn elems(&self) -> impl Iterator<Item = ModElem> + '_ {
        self.set.iter().map(ModElem)
    }

    pub fn contains(&self, m: ModElem) -> bool {
        self.set.contains(m.0)
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

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.set.is_subset(&other.set)
    }
}

/// Homomorphism between modules over the same ring, stored as a full element
/// map table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    map: Vec<ModElem>,
}

impl ModuleHom {
    /// Build from images of the standard generators of a direct-sum source.
    /// Checks `d_j · image_j = 0` and full action compatibility.
    pub fn from_generator_images(
        src: &Module,
        tgt: &Module,
        images: &[ModElem],
    ) -> Result<ModuleHom> {
        if src.ring != tgt.ring {
            return Err(Error::input("hom endpoints must share a ring"));
        }
        let Some((orders, _)) = src.direct_shape.clone() else {
            return Err(Error::input(
                "generator images need a direct-sum source module",
            ));
        };
        if images.len() != orders.len() {
            return Err(Error::input("one image per source generator required"));
        }
        for (&d, &img) in orders.iter().zip(images) {
            let mut acc = tgt.zero_elem();
            for _ in 0..d {
                acc = tgt.add_elem(acc, img);
            }
            if acc != tgt.zero_elem() {
                return Err(Error::input(format!(
                    "ill-defined hom: order-{d} generator image does not vanish"
                )));
            }
        }
        // f(m) = sum_j m_j * image_j by repeated addition.
        let mut map: Vec<ModElem> = Vec::with_capacity(src.order);
        for m in 0..src.order {
            let mut c = m;
            let mut residues = vec![0usize; orders.len()];
            for (j, &d) in orders.iter().enumerate().rev() {
                residues[j] = c % d as usize;
                c /= d as usize;
            }
            let mut acc = tgt.zero_elem();
            for (j, &rj) in residues.iter().enumerate() {
                for _ in 0..rj {
                    acc = tgt.add_elem(acc, images[j]);
                }
            }
            map.push(acc);
        }
        let hom = ModuleHom { map };
        hom.validate(src, tgt)?;
        Ok(hom)
    }

    pub fn from_table(src: &Module, tgt: &Module, map: Vec<ModElem>) -> Result<ModuleHom> {
        if map.len() != src.order {
            return Err(Error::input("hom table must cover the source"));
        }
        let hom = ModuleHom { map };
        hom.validate(src, tgt)?;
        Ok(hom)
    }

    pub fn identity(m: &Module) -> ModuleHom {
        ModuleHom {
            map: m.elems().collect(),
        }
    }

    /// Additivity and action compatibility, by full enumeration.
    pub fn validate(&self, src: &Module, tgt: &Module) -> Result<()> {
        for x in src.elems() {
            for y in src.elems() {
                if self.apply(src.add_elem(x, y)) != tgt.add_elem(self.apply(x), self.apply(y)) {
                    return Err(Error::input("ill-defined hom: not additive"));
                }
            }
            for r in src.ring.elems() {
                if self.apply(src.act(r, x)) != tgt.act(r, self.apply(x)) {
                    return Err(Error::input("ill-defined hom: not R-linear"));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, m: ModElem) -> ModElem {
        self.map[m.0]
    }

    pub fn table(&self) -> &[ModElem] {
        &self.map
    }

    pub fn image(&self, tgt_order: usize, n: &Submodule) -> Submodule {
        let mut set = BitSet::new(tgt_order);
        for x in n.elems() {
            set.insert(self.map[x.0].0);
        }
        Submodule { set, gens: None }
    }

    pub fn full_image(&self, tgt_order: usize) -> Submodule {
        let mut set = BitSet::new(tgt_order);
        for m in &self.map {
            set.insert(m.0);
        }
        Submodule { set, gens: None }
    }

    pub fn preimage(&self, n: &Submodule) -> Submodule {
        let mut set = BitSet::new(self.map.len());
        for (m, img) in self.map.iter().enumerate() {
            if n.set.contains(img.0) {
                set.insert(m);
            }
        }
        Submodule { set, gens: None }
    }

    pub fn is_mono(&self) -> bool {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        self.map.iter().all(|m| seen.insert(m.0))
    }
}
