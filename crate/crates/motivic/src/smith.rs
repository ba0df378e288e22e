//! The Smith construction of `A₂^R` and `B̃^R(2)`.
//!
//! The complex `K` is `M`-free on `x₀, x₁, x₃, x₇` with `Sq^{i+1}xᵢ =
//! x_{2i+1}`; `Σ₆` permutes the slots of `K^⊗6`, and the mod-2 Young
//! symmetrizer `ē = R̄C̄` of the (3,2,1)-tableau (cells 1,2,3 / 4,5 / 6)
//! carves out `A₂^R = Σ^{−5,−1} ē(K^⊗6)`. This module also performs the
//! `ι`-action computations, the closure identities behind the `B̃`-module
//! structure, the degree-(8,4) non-closure certificate, and the quotient
//! `B̃^R(2) = A^R(2)/A^R(2)·Q̃₂`.

use std::collections::{BTreeMap, BTreeSet};

use crate::fmodule::{FModule, Generator, ModuleElement};
use crate::ground::{sq_on_coeff, Bidegree, GroundElement};
use crate::linalg::{BitMat, Echelon};
use crate::steenrod::{left_mul_sq, milnor_primitives, SteenrodElement, Subalgebra};

/// A numbered Young diagram: the basis tensor `x_{i₁}⊗…⊗x_{i₆}` of `K^⊗6`,
/// with cells 1,2,3 the top row, 4,5 the middle row, 6 the bottom cell.
pub type Nyd = [u8; 6];

/// Bidegrees of the `K`-generators `x₀, x₁, x₃, x₇`.
fn slot_bidegree(i: u8) -> Bidegree {
    match i {
        0 => Bidegree::new(0, 0),
        1 => Bidegree::new(1, 0),
        3 => Bidegree::new(3, 1),
        7 => Bidegree::new(7, 3),
        _ => panic!("invalid K-generator index {i}"),
    }
}

/// `Sq^{i+1}xᵢ = x_{2i+1}`: the successor of a slot value, if any.
fn slot_successor(i: u8) -> Option<u8> {
    match i {
        0 | 1 | 3 => Some(2 * i + 1),
        _ => None,
    }
}

pub fn nyd_bidegree(t: &Nyd) -> Bidegree {
    t.iter().fold(Bidegree::ZERO, |d, &i| d + slot_bidegree(i))
}

/// `[a b c / d e / f]`.
pub fn nyd_string(t: &Nyd) -> String {
    format!("[{} {} {} / {} {} / {}]", t[0], t[1], t[2], t[3], t[4], t[5])
}

/// An element of `K^⊗6`: an `M`-combination of NYDs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TElement {
    terms: BTreeMap<Nyd, GroundElement>,
}

impl TElement {
    pub fn zero() -> Self {
        TElement::default()
    }

    pub fn basis(t: Nyd) -> Self {
        TElement::term(GroundElement::one(), t)
    }

    pub fn term(c: GroundElement, t: Nyd) -> Self {
        let mut e = TElement::zero();
        e.add_term(t, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Nyd, &GroundElement)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, t: Nyd, c: GroundElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(d) => {
                *d += c;
                if d.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add(&mut self, other: &TElement) {
        for (t, c) in &other.terms {
            self.add_term(*t, c.clone());
        }
    }

    pub fn coeff_mul(&self, c: &GroundElement) -> TElement {
        let mut out = TElement::zero();
        for (t, d) in &self.terms {
            out.add_term(*t, c * d);
        }
        out
    }

    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut degs = self
            .terms
            .iter()
            .map(|(t, c)| c.bidegree().map(|d| d + nyd_bidegree(t)));
        let d = degs.next()??;
        degs.all(|e| e == Some(d)).then_some(d)
    }

    pub fn coordinates(&self) -> BTreeSet<(Nyd, u32, u32)> {
        let mut v = BTreeSet::new();
        for (t, c) in &self.terms {
            for (a, b) in c.monomials() {
                v.insert((*t, a, b));
            }
        }
        v
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (t, c) in &self.terms {
            for (a, b) in c.monomials() {
                if (a, b) == (0, 0) {
                    parts.push(nyd_string(t));
                } else {
                    parts.push(format!("{} {}", crate::ground::monomial_string(a, b), nyd_string(t)));
                }
            }
        }
        parts.join(" + ")
    }
}

/// `Sq^n` on the subtensor of slots `m..6` of `t`, by the binary motivic
/// Cartan rule peeled one slot at a time (see [`act_sq`]). Slot `m` absorbs
/// `i ≠ 0` only via `Sq^{i+1}xᵢ = x_{2i+1}`.
fn act_sq_slots(n: u32, t: &Nyd, m: usize) -> Vec<(Nyd, GroundElement)> {
    if m == 6 {
        // Empty tensor = the unit; Sq^n kills it for n > 0.
        return if n == 0 {
            vec![(*t, GroundElement::one())]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let mut splits: Vec<u32> = vec![0];
    if slot_successor(t[m]).is_some() {
        splits.push(t[m] as u32 + 1);
    }
    for &i in &splits {
        if i > n {
            continue;
        }
        let j = n - i;
        let factor = if n % 2 == 0 && i % 2 == 1 {
            GroundElement::tau()
        } else {
            GroundElement::one()
        };
        for (mut t2, c2) in act_sq_slots(j, t, m + 1) {
            if i > 0 {
                t2[m] = slot_successor(t[m]).unwrap();
            }
            out.push((t2, &factor * &c2));
        }
    }
    if n % 2 == 1 {
        for &i in &splits {
            if i % 2 == 0 || i >= n {
                continue;
            }
            let j = n - 1 - i;
            if j % 2 == 0 {
                continue;
            }
            for (mut t2, c2) in act_sq_slots(j, t, m + 1) {
                t2[m] = slot_successor(t[m]).unwrap();
                out.push((t2, &GroundElement::rho() * &c2));
            }
        }
    }
    out
}

/// `Sq^n` on `K^⊗6`, peeling off the coefficient and then each slot with the
/// binary motivic Cartan rule: for even `n`,
/// `Sq^n(xy) = Σ_{i+j=n} τ^{[i,j both odd]} Sq^i x · Sq^j y`; for odd `n` the
/// same sum with all coefficients 1, plus the Bockstein correction
/// `ρ·Σ_{i+j=n−1, i,j odd} Sq^i x · Sq^j y`.
pub fn act_sq(n: u32, v: &TElement) -> TElement {
    let mut out = TElement::zero();
    for (t, c) in v.terms() {
        for k in 0..=n {
            let ck = sq_on_coeff(k, c);
            if ck.is_zero() {
                continue;
            }
            let factor = if n % 2 == 0 && k % 2 == 1 {
                GroundElement::tau()
            } else {
                GroundElement::one()
            };
            for (t2, c2) in act_sq_slots(n - k, t, 0) {
                out.add_term(t2, &(&factor * &ck) * &c2);
            }
        }
        if n % 2 == 1 {
            for k in (1..n).step_by(2) {
                let j = n - 1 - k;
                if j % 2 == 0 {
                    continue;
                }
                let ck = sq_on_coeff(k, c);
                if ck.is_zero() {
                    continue;
                }
                for (t2, c2) in act_sq_slots(j, t, 0) {
                    out.add_term(t2, &(&GroundElement::rho() * &ck) * &c2);
                }
            }
        }
    }
    out
}

/// Apply an element of `A^R` to a tensor (admissible keys right-to-left).
pub fn act(x: &SteenrodElement, v: &TElement) -> TElement {
    let mut out = TElement::zero();
    for (key, c) in x.terms() {
        let mut w = v.clone();
        for &n in key.iter().rev() {
            w = act_sq(n, &w);
        }
        out.add(&w.coeff_mul(c));
    }
    out
}

// ---------------------------------------------------------------------------
// F₂[Σ₆] and the Young symmetrizer
// ---------------------------------------------------------------------------

/// A permutation of the six cells, as the image list `i ↦ p[i]`.
pub type Perm = [usize; 6];

pub const IDENTITY: Perm = [0, 1, 2, 3, 4, 5];

pub fn compose(p: &Perm, q: &Perm) -> Perm {
    std::array::from_fn(|i| p[q[i]])
}

/// `σ · t`: move the content of slot `i` to slot `σ(i)`.
pub fn perm_apply(p: &Perm, t: &Nyd) -> Nyd {
    let mut out = [0u8; 6];
    for i in 0..6 {
        out[p[i]] = t[i];
    }
    out
}

/// An element of `F₂[Σ₆]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupAlgebraElement {
    terms: BTreeSet<Perm>,
}

impl GroupAlgebraElement {
    pub fn from_perms(perms: impl IntoIterator<Item = Perm>) -> Self {
        let mut e = GroupAlgebraElement::default();
        for p in perms {
            if !e.terms.remove(&p) {
                e.terms.insert(p);
            }
        }
        e
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn multiply(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        GroupAlgebraElement::from_perms(
            self.terms
                .iter()
                .flat_map(|p| other.terms.iter().map(move |q| compose(p, q))),
        )
    }

    pub fn apply(&self, v: &TElement) -> TElement {
        let mut out = TElement::zero();
        for p in &self.terms {
            for (t, c) in v.terms() {
                out.add_term(perm_apply(p, t), c.clone());
            }
        }
        out
    }
}

fn block_permutations(blocks: &[&[usize]]) -> Vec<Perm> {
    // All permutations preserving each block setwise, by composing
    // permutations of the blocks.
    let mut perms = vec![IDENTITY];
    for block in blocks {
        let mut next = Vec::new();
        for assignment in permutations(block) {
            for p in &perms {
                let mut q = *p;
                for (i, &src) in block.iter().enumerate() {
                    q[src] = p[assignment[i]];
                }
                next.push(q);
            }
        }
        perms = next;
    }
    perms.sort();
    perms.dedup();
    perms
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let rest: Vec<usize> = items.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &y)| y).collect();
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// `R̄`: the sum of the 12 row-group permutations (rows {1,2,3}, {4,5}, {6}).
pub fn row_symmetrizer() -> GroupAlgebraElement {
    GroupAlgebraElement::from_perms(block_permutations(&[&[0, 1, 2], &[3, 4]]))
}

/// `C̄`: the sum of the 12 column-group permutations (columns {1,4,6},
/// {2,5}, {3}).
pub fn col_symmetrizer() -> GroupAlgebraElement {
    GroupAlgebraElement::from_perms(block_permutations(&[&[0, 3, 5], &[1, 4]]))
}

/// `ē = R̄·C̄`, the mod-2 Young symmetrizer (idempotent in `F₂[Σ₆]`).
pub fn young_symmetrizer() -> GroupAlgebraElement {
    row_symmetrizer().multiply(&col_symmetrizer())
}

/// F₂-dimension of `ē(V^⊗6)` for `dim V = d`, by exact Gaussian elimination
/// over the `d⁶` basis tensors.
pub fn apply_symmetrizer(d: usize) -> usize {
    assert!((1..=4).contains(&d));
    let ebar = young_symmetrizer();
    let index = |t: &Nyd| -> usize { t.iter().fold(0, |acc, &i| acc * d + i as usize) };
    let mut images: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut t = [0u8; 6];
    loop {
        // Image of the basis tensor t under ē, as sorted support.
        let mut img: BTreeSet<Nyd> = BTreeSet::new();
        for p in &ebar.terms {
            let s = perm_apply(p, &t);
            if !img.remove(&s) {
                img.insert(s);
            }
        }
        if !img.is_empty() {
            images.insert(img.iter().map(&index).collect());
        }
        // Next tuple over the alphabet 0..d.
        let mut carry = 5usize;
        loop {
            t[carry] += 1;
            if (t[carry] as usize) < d {
                break;
            }
            t[carry] = 0;
            if carry == 0 {
                let mut m = BitMat::new(d.pow(6));
                for row in images {
                    m.push_row(row);
                }
                return m.rank();
            }
            carry -= 1;
        }
    }
}

/// The complex `K`: `M`-free on `x₀, x₁, x₃, x₇` with `Sq^{i+1}xᵢ =
/// x_{2i+1}` and all other table squares zero.
pub fn build_k() -> FModule {
    let generators = [0u8, 1, 3, 7]
        .iter()
        .map(|&i| Generator { name: format!("x{i}"), deg: slot_bidegree(i) })
        .collect();
    let mut tables = BTreeMap::new();
    for (g, src, dst) in [(1u32, 0usize, 1usize), (2, 1, 2), (4, 2, 3)] {
        let mut table = vec![ModuleElement::zero(); 4];
        table[src].add_term(dst, GroundElement::one());
        tables.insert(g, table);
    }
    tables.insert(8, vec![ModuleElement::zero(); 4]);
    FModule { generators, tables }
}

// ---------------------------------------------------------------------------
// A₂^R
// ---------------------------------------------------------------------------

/// All 4096 NYDs over the alphabet {0,1,3,7}.
/// All 4⁶ numbered Young diagrams over the alphabet {0,1,3,7}.
pub fn all_nyds() -> Vec<Nyd> {
    let vals = [0u8, 1, 3, 7];
    let mut out = Vec::with_capacity(4096);
    for a in vals {
        for b in vals {
            for c in vals {
                for d in vals {
                    for e in vals {
                        for f in vals {
                            out.push([a, b, c, d, e, f]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The constructed module `A₂^R = Σ^{−5,−1} ē(K^⊗6)`.
pub struct A2 {
    /// Abstract presentation: 64 generators with power-of-two tables,
    /// bidegrees already shifted by `(−5,−1)`.
    pub module: FModule,
    /// The tensor realization of each generator.
    pub realizations: Vec<TElement>,
    /// The bottom class `ι = R̄([3 1 0 / 1 0 / 0])`, unshifted bidegree (5,1).
    pub iota: TElement,
    /// Whether all nonzero `ē`-images of bidegree-(5,1) NYDs coincide
    /// (asserted without proof in the paper; recorded here).
    pub iota_image_unique: bool,
}

const A2_SHIFT: Bidegree = Bidegree { s: 5, w: 1 };

/// Express `v` as an `M`-combination of the `realizations`, or fail.
fn express_in_tensor_basis(
    realizations: &[(TElement, Bidegree)],
    v: &TElement,
) -> Result<ModuleElement, String> {
    if v.is_zero() {
        return Ok(ModuleElement::zero());
    }
    let deg = v.bidegree().ok_or("inhomogeneous tensor element")?;
    type Coord = (u8, Nyd, u32, u32);
    let mut aug: Echelon<Coord> = Echelon::new();
    for (k, (e, d0)) in realizations.iter().enumerate() {
        let d = deg - *d0;
        let (b, a) = (d.s, d.w - d.s);
        if b < 0 || a < 0 {
            continue;
        }
        let m = e.coeff_mul(&GroundElement::monomial(a as u32, b as u32));
        let mut row: BTreeSet<Coord> =
            m.coordinates().into_iter().map(|(t, x, y)| (0, t, x, y)).collect();
        row.insert((1, [k as u8, a as u8, b as u8, 0, 0, 0], 0, 0));
        aug.insert(row);
    }
    let coords: BTreeSet<Coord> =
        v.coordinates().into_iter().map(|(t, x, y)| (0, t, x, y)).collect();
    let r = aug.reduce(coords);
    if r.iter().any(|c| c.0 == 0) {
        return Err("element is not in the span of the generators".to_string());
    }
    let mut out = ModuleElement::zero();
    for (_, tag, _, _) in r {
        out.add_term(tag[0] as usize, GroundElement::monomial(tag[1] as u32, tag[2] as u32));
    }
    Ok(out)
}

/// Build `A₂^R`: symmetrize all NYDs, select a minimal `M`-generating set of
/// the image by graded Nakayama, and tabulate `Sq^{2^k}` (k ≤ 4) in that
/// basis.
pub fn build_a2() -> Result<A2, String> {
    let ebar = young_symmetrizer();
    // Nonzero images grouped by (unshifted) bidegree.
    let mut by_degree: BTreeMap<Bidegree, Vec<TElement>> = BTreeMap::new();
    for t in all_nyds() {
        let img = ebar.apply(&TElement::basis(t));
        if !img.is_zero() {
            by_degree.entry(nyd_bidegree(&t)).or_default().push(img);
        }
    }
    // Rmk 5.6: all nonzero images of bidegree-(5,1) NYDs are the same.
    let iota = row_symmetrizer().apply(&TElement::basis([3, 1, 0, 1, 0, 0]));
    let iota_image_unique = by_degree
        .get(&Bidegree::new(5, 1))
        .is_some_and(|v| !v.is_empty() && v.iter().all(|e| *e == iota));

    // Minimal generators: at each bidegree, extend the echelon of
    // (τ,ρ)-multiples of lower images by the images at that bidegree.
    let degrees: Vec<Bidegree> = by_degree.keys().copied().collect();
    let mut gens: Vec<(TElement, Bidegree)> = Vec::new();
    for &deg in &degrees {
        let mut ech: Echelon<(Nyd, u32, u32)> = Echelon::new();
        for (&d0, imgs) in &by_degree {
            let d = deg - d0;
            let (b, a) = (d.s, d.w - d.s);
            if b < 0 || a < 0 || (a, b) == (0, 0) {
                continue;
            }
            let m = GroundElement::monomial(a as u32, b as u32);
            for e in imgs {
                ech.insert(e.coeff_mul(&m).coordinates());
            }
        }
        for e in &by_degree[&deg] {
            if ech.insert(e.coordinates()) {
                gens.push((e.clone(), deg));
            }
        }
    }
    if gens.len() != 64 {
        return Err(format!("ē(K^⊗6) has {} M-generators, expected 64", gens.len()));
    }
    if gens.first().map(|g| g.1) != Some(Bidegree::new(5, 1))
        || gens.last().map(|g| g.1) != Some(Bidegree::new(28, 11))
    {
        return Err("bottom/top generator bidegrees are not (5,1)/(28,11)".to_string());
    }

    // Tabulate Sq^{2^k} in the generator basis (shifted degrees).
    let generators: Vec<Generator> = gens
        .iter()
        .enumerate()
        .map(|(k, (_, d))| Generator { name: format!("g{k}"), deg: *d - A2_SHIFT })
        .collect();
    let mut tables = BTreeMap::new();
    for k in 0..=4u32 {
        let g = 1 << k;
        let mut table = Vec::with_capacity(64);
        for (e, _) in &gens {
            let img = act_sq(g, e);
            table.push(express_in_tensor_basis(&gens, &img).map_err(|err| {
                format!("Sq{g} image leaves the symmetrized submodule: {err}")
            })?);
        }
        tables.insert(g, table);
    }
    Ok(A2 {
        module: FModule { generators, tables },
        realizations: gens.into_iter().map(|(e, _)| e).collect(),
        iota,
        iota_image_unique,
    })
}

/// Build `R̄(Σ cᵢ·NYDᵢ)` from term data — the shape of the paper's displays.
pub fn rbar_combination(terms: &[(GroundElement, Nyd)]) -> TElement {
    let mut v = TElement::zero();
    for (c, t) in terms {
        v.add_term(*t, c.clone());
    }
    row_symmetrizer().apply(&v)
}

/// The `ι`-action table: each entry is `(label, computed value, golden
/// closed form)`; [`iota_actions`] verifies they agree.
pub struct IotaAction {
    pub label: &'static str,
    pub computed: TElement,
    pub golden: TElement,
}

pub fn iota_actions() -> Vec<IotaAction> {
    let iota = row_symmetrizer().apply(&TElement::basis([3, 1, 0, 1, 0, 0]));
    let p = milnor_primitives();
    let one = GroundElement::one;
    let q2t_golden = rbar_combination(&[
        (one(), [3, 1, 0, 1, 0, 7]),
        (one(), [3, 1, 0, 7, 1, 0]),
        (one(), [7, 3, 1, 1, 0, 0]),
    ]);
    let mut q2_golden = q2t_golden.clone();
    q2_golden.add(&rbar_combination(&[(GroundElement::rho(), [3, 1, 0, 3, 1, 3])]));
    vec![
        IotaAction {
            label: "Sq1 iota",
            computed: act_sq(1, &iota),
            golden: rbar_combination(&[(one(), [3, 1, 0, 1, 0, 1])]),
        },
        IotaAction {
            label: "Sq2 iota",
            computed: act_sq(2, &iota),
            golden: rbar_combination(&[(one(), [3, 1, 0, 3, 0, 0])]),
        },
        IotaAction {
            label: "Sq4 iota",
            computed: act_sq(4, &iota),
            golden: rbar_combination(&[
                (one(), [7, 1, 0, 1, 0, 0]),
                (GroundElement::tau(), [3, 1, 0, 3, 1, 1]),
            ]),
        },
        IotaAction {
            label: "Q2tilde iota",
            computed: act(&p.q2_tilde, &iota),
            golden: q2t_golden,
        },
        IotaAction { label: "Q2 iota", computed: act(&p.q2, &iota), golden: q2_golden },
    ]
}

/// The 22 generator bidegrees of `B̃^R(2)`.
pub const BTILDE_DEGREES: [(i32, i32); 22] = [
    (0, 0),
    (1, 0),
    (2, 1),
    (3, 1),
    (4, 1),
    (4, 2),
    (5, 2),
    (6, 2),
    (6, 3),
    (7, 3),
    (8, 3),
    (8, 4),
    (9, 4),
    (10, 4),
    (10, 5),
    (11, 5),
    (12, 5),
    (12, 6),
    (13, 6),
    (14, 6),
    (15, 7),
    (16, 7),
];

/// Verify the three closure identities for `Sq⁸` on `Q̃₂ι`, `Sq¹Q̃₂ι` and
/// `Sq²Q̃₂ι`, plus the degree-reasons claim that these (for `Sq⁸`, i.e.
/// `i = 3`) are the only cases with a degree-supported obstruction.
pub fn check_lemma57() -> Result<(), String> {
    let iota = row_symmetrizer().apply(&TElement::basis([3, 1, 0, 1, 0, 0]));
    let p = milnor_primitives();
    let q2t_iota = act(&p.q2_tilde, &iota);
    let word = |squares: &[u32], v: &TElement| {
        let mut w = v.clone();
        for &n in squares.iter().rev() {
            w = act_sq(n, &w);
        }
        w
    };
    // In each identity the right-hand operator b ∈ A^R(2) acts directly on
    // Q̃₂ι (the only degree-consistent reading: a trailing Sq¹ on the second
    // right-hand side would make it inhomogeneous). The second and third
    // operators as commonly displayed need small corrections, found by
    // solving b·(Q̃₂ι) = lhs exactly over a spanning set of the relevant
    // bidegree piece of A^R(2):
    //
    // * identity 2 gains the term ρSq⁵Sq²Sq¹ (already admissible; without it
    //   the sides differ by exactly ρSq⁵Sq²Sq¹·(Q̃₂ι) ≠ 0);
    // * identity 3's term τSq⁵Sq⁴Sq¹ must be replaced by the generator word
    //   Sq⁴Sq²Sq²Sq² = τSq⁵Sq⁴Sq¹ + τSq⁹Sq¹ (equivalently, the display is
    //   missing the admissible term τSq⁹Sq¹).
    let checks: [(&str, TElement, TElement); 3] = [
        ("Sq8(Q2t iota) = (Sq4Sq4 + Sq4Sq2Sq2) Q2t iota", act_sq(8, &q2t_iota), {
            let mut rhs = word(&[4, 4], &q2t_iota);
            rhs.add(&word(&[4, 2, 2], &q2t_iota));
            rhs
        }),
        (
            "Sq8(Sq1 Q2t iota) = (Sq7Sq2 + Sq2Sq7 + rho Sq5Sq2Sq1) Q2t iota",
            act_sq(8, &act_sq(1, &q2t_iota)),
            {
                let mut rhs = word(&[7, 2], &q2t_iota);
                rhs.add(&word(&[2, 7], &q2t_iota));
                rhs.add(&word(&[5, 2, 1], &q2t_iota).coeff_mul(&GroundElement::rho()));
                rhs
            },
        ),
        (
            "Sq8(Sq2 Q2t iota) = (Sq4Sq4Sq2 + Sq4Sq2Sq4 + Sq4Sq2Sq2Sq2) Q2t iota",
            act_sq(8, &act_sq(2, &q2t_iota)),
            {
                let mut rhs = word(&[4, 4, 2], &q2t_iota);
                rhs.add(&word(&[4, 2, 4], &q2t_iota));
                rhs.add(&word(&[4, 2, 2, 2], &q2t_iota));
                rhs
            },
        ),
    ];
    for (label, lhs, rhs) in checks {
        if lhs != rhs {
            return Err(format!(
                "{label}: lhs = {}, rhs = {}",
                lhs.display(),
                rhs.display()
            ));
        }
    }
    // Degree reasons: Sq^{2^i}(a·Q̃₂ι) can have a nonzero image in the
    // quotient B̃-part only if its bidegree is a monomial multiple of a
    // quotient generator degree (the quotient is free over M on the B̃
    // degree set shifted by the bottom class (5,1)). Scan i ≥ 3 (the
    // squares outside A^R(2)) and a over the submodule generator degrees,
    // which are the B̃ degrees shifted by |Q̃₂ι| = (12,4).
    let mut supported = Vec::new();
    for i in 3..=5u32 {
        for &(s, w) in &BTILDE_DEGREES {
            let target = Bidegree::new(s, w)
                + Bidegree::new(12, 4)
                + Bidegree::of_sq(1 << i);
            let reachable = BTILDE_DEGREES.iter().any(|&(ds, dw)| {
                let d = target - (Bidegree::new(ds, dw) + A2_SHIFT);
                d.s >= 0 && d.w - d.s >= 0
            });
            if reachable {
                supported.push((i, (s, w)));
            }
        }
    }
    let expected = vec![(3, (0, 0)), (3, (1, 0)), (3, (2, 1))];
    if supported != expected {
        return Err(format!("degree-reasons scan found {supported:?}, expected {expected:?}"));
    }
    Ok(())
}

/// The eight-element basis of `A^R(2)` in bidegree `(8,4)`, as
/// (coefficient, word) pairs.
pub fn degree_84_basis() -> Vec<(GroundElement, Vec<u32>)> {
    let one = GroundElement::one;
    let tau = GroundElement::tau;
    let rho = GroundElement::rho;
    vec![
        (one(), vec![6, 2]),
        (tau(), vec![7, 1]),
        (tau(), vec![5, 2, 1]),
        (rho(), vec![7]),
        (rho(), vec![6, 1]),
        (rho(), vec![5, 2]),
        (rho(), vec![4, 2, 1]),
        (&rho() * &rho(), vec![5, 1]),
    ]
}

/// Certify that `Sq⁸(Q₂ι)` is not of the form `b·Q₂ι` for any `b` in the
/// degree-(8,4) piece of `A^R(2)`: match the displayed expansion, then show
/// non-membership in the span of the eight basis actions.
pub fn check_rmk59(a2_subalgebra: &Subalgebra) -> Result<(), String> {
    let iota = row_symmetrizer().apply(&TElement::basis([3, 1, 0, 1, 0, 0]));
    let p = milnor_primitives();
    let q2_iota = act(&p.q2, &iota);
    let lhs = act_sq(8, &q2_iota);
    let one = GroundElement::one;
    let rho = GroundElement::rho();
    let golden = rbar_combination(&[
        (one(), [7, 3, 0, 3, 0, 7]),
        (one(), [7, 3, 0, 7, 3, 0]),
        (GroundElement::tau(), [7, 3, 1, 7, 1, 1]),
        (rho.clone(), [7, 1, 0, 7, 1, 3]),
        (rho.clone(), [7, 1, 0, 3, 1, 7]),
        (rho.clone(), [3, 1, 0, 7, 1, 7]),
    ]);
    if lhs != golden {
        return Err(format!(
            "Sq8(Q2 iota) expansion mismatch: got {}, expected {}",
            lhs.display(),
            golden.display()
        ));
    }
    // The stated basis really is a basis of the (8,4) piece of A^R(2).
    let mut basis_span = Echelon::new();
    for (c, word) in degree_84_basis() {
        let mut b = SteenrodElement::one().coeff_mul(&c);
        for &n in word.iter().rev() {
            b = left_mul_sq(n, &b);
        }
        if b.bidegree() != Some(Bidegree::new(8, 4)) {
            return Err(format!("basis element {word:?} is not in bidegree (8,4)"));
        }
        if !a2_subalgebra.contains(&b) {
            return Err(format!("basis element {word:?} is not in A^R(2)"));
        }
        basis_span.insert(b.coordinates());
    }
    if basis_span.rank() != 8 || a2_subalgebra.dim(Bidegree::new(8, 4)) != 8 {
        return Err("the (8,4) piece of A^R(2) is not the stated 8-dimensional space".to_string());
    }
    // Span of b·(Q₂ι) over the eight b's; Sq⁸(Q₂ι) must lie outside.
    let mut action_span = Echelon::new();
    for (c, word) in degree_84_basis() {
        let mut w = q2_iota.clone();
        for &n in word.iter().rev() {
            w = act_sq(n, &w);
        }
        action_span.insert(w.coeff_mul(&c).coordinates());
    }
    if action_span.contains(lhs.coordinates()) {
        return Err("Sq8(Q2 iota) unexpectedly lies in the span of b·(Q2 iota)".to_string());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// B̃^R(2)
// ---------------------------------------------------------------------------

/// The quotient `B̃^R(2) = A^R(2) / A^R(2)·Q̃₂`.
pub struct Btilde2 {
    /// Presentation on 32 generators with `Sq¹, Sq², Sq⁴` tables.
    pub module: FModule,
    /// Representatives of the generators inside `A^R(2)`.
    pub representatives: Vec<SteenrodElement>,
    /// Bidegrees of a minimal generating set of the left ideal.
    pub ideal_degrees: Vec<Bidegree>,
}

type AlgCoord = (u8, Vec<u32>, u32, u32);

fn alg_coords(tag: u8, x: &SteenrodElement) -> BTreeSet<AlgCoord> {
    x.coordinates().into_iter().map(|(k, a, b)| (tag, k, a, b)).collect()
}

pub fn build_btilde2(a2_subalgebra: &Subalgebra) -> Result<Btilde2, String> {
    let q2t = milnor_primitives().q2_tilde;
    // Ideal spanning elements: (product)·Q̃₂ for every reduced product.
    let mut ideal: Vec<(SteenrodElement, Bidegree)> = Vec::new();
    for e in &a2_subalgebra.elements {
        let mut x = q2t.clone();
        for &n in e.word.iter().rev() {
            x = left_mul_sq(n, &x);
        }
        if !x.is_zero() {
            ideal.push((x, e.deg + Bidegree::new(7, 3)));
        }
    }
    let multiples_echelon = |deg: Bidegree,
                             sources: &[(SteenrodElement, Bidegree)],
                             keep: &dyn Fn(u32, u32) -> bool|
     -> Echelon<(Vec<u32>, u32, u32)> {
        let mut ech = Echelon::new();
        for (e, d0) in sources {
            let d = deg - *d0;
            let (b, a) = (d.s, d.w - d.s);
            if b >= 0 && a >= 0 && keep(a as u32, b as u32) {
                let m = GroundElement::monomial(a as u32, b as u32);
                ech.insert(e.coeff_mul(&m).coordinates());
            }
        }
        ech
    };
    let reps_src: Vec<(SteenrodElement, Bidegree)> =
        a2_subalgebra.elements.iter().map(|e| (e.elem.clone(), e.deg)).collect();

    // Quotient generators by graded Nakayama: independent of
    // ideal + (τ,ρ)·A^R(2) at each bidegree.
    let mut degrees: Vec<Bidegree> = a2_subalgebra.elements.iter().map(|e| e.deg).collect();
    degrees.sort_by_key(|d| (d.s, d.w));
    degrees.dedup();
    let mut representatives: Vec<SteenrodElement> = Vec::new();
    let mut gen_degrees: Vec<Bidegree> = Vec::new();
    for &deg in &degrees {
        let mut ech = multiples_echelon(deg, &ideal, &|_, _| true);
        for row in multiples_echelon(deg, &reps_src, &|a, b| (a, b) != (0, 0)).rows() {
            ech.insert(row.clone());
        }
        for e in &a2_subalgebra.elements {
            if e.deg == deg && ech.insert(e.elem.coordinates()) {
                representatives.push(e.elem.clone());
                gen_degrees.push(deg);
            }
        }
    }
    if representatives.len() != 32 {
        return Err(format!("B~(2) has {} generators, expected 32", representatives.len()));
    }
    let degree_set: BTreeSet<(i32, i32)> = gen_degrees.iter().map(|d| (d.s, d.w)).collect();
    if degree_set != BTreeSet::from(BTILDE_DEGREES) {
        return Err(format!("B~(2) generator degrees {degree_set:?} differ from the stated set"));
    }

    // Minimal generators of the ideal itself.
    let mut ideal_degrees = Vec::new();
    let mut ideal_degs: Vec<Bidegree> = ideal.iter().map(|(_, d)| *d).collect();
    ideal_degs.sort_by_key(|d| (d.s, d.w));
    ideal_degs.dedup();
    for deg in ideal_degs {
        if deg.s > 23 {
            continue; // outside the faithful window of the span
        }
        let mut ech = multiples_echelon(deg, &ideal, &|a, b| (a, b) != (0, 0));
        for (e, d0) in &ideal {
            if *d0 == deg && ech.insert(e.coordinates()) {
                ideal_degrees.push(deg);
            }
        }
    }
    let expected_ideal: BTreeSet<(i32, i32)> =
        BTILDE_DEGREES.iter().map(|&(s, w)| (s + 7, w + 3)).collect();
    let got_ideal: BTreeSet<(i32, i32)> = ideal_degrees.iter().map(|d| (d.s, d.w)).collect();
    if ideal_degrees.len() != 32 || got_ideal != expected_ideal {
        return Err(format!(
            "ideal has {} generators in degrees {got_ideal:?}; expected 32 in D+(7,3)",
            ideal_degrees.len()
        ));
    }

    // Action tables Sq¹, Sq², Sq⁴ on the quotient: act in A^R(2), reduce mod
    // the ideal (unmarked rows), express in the generator basis (marked).
    let mut tables = BTreeMap::new();
    for g in [1u32, 2, 4] {
        let mut table = Vec::with_capacity(32);
        for (rep, &d0) in representatives.iter().zip(&gen_degrees) {
            let img = left_mul_sq(g, rep);
            if img.is_zero() {
                table.push(ModuleElement::zero());
                continue;
            }
            let deg = d0 + Bidegree::of_sq(g);
            let mut aug: Echelon<AlgCoord> = Echelon::new();
            for (e, di) in &ideal {
                let d = deg - *di;
                let (b, a) = (d.s, d.w - d.s);
                if b >= 0 && a >= 0 {
                    let m = GroundElement::monomial(a as u32, b as u32);
                    aug.insert(alg_coords(0, &e.coeff_mul(&m)));
                }
            }
            for (k, (r, dk)) in representatives.iter().zip(&gen_degrees).enumerate() {
                let d = deg - *dk;
                let (b, a) = (d.s, d.w - d.s);
                if b >= 0 && a >= 0 {
                    let m = GroundElement::monomial(a as u32, b as u32);
                    let mut row = alg_coords(0, &r.coeff_mul(&m));
                    row.insert((1, vec![k as u32, a as u32, b as u32], 0, 0));
                    aug.insert(row);
                }
            }
            let r = aug.reduce(alg_coords(0, &img));
            if r.iter().any(|c| c.0 == 0) {
                return Err(format!("Sq{g} image not reducible into the quotient basis"));
            }
            let mut row = ModuleElement::zero();
            for (_, tag, _, _) in r {
                row.add_term(tag[0] as usize, GroundElement::monomial(tag[1], tag[2]));
            }
            table.push(row);
        }
        tables.insert(g, table);
    }
    let generators = gen_degrees
        .iter()
        .enumerate()
        .map(|(k, &d)| Generator { name: format!("q{k}"), deg: d })
        .collect();
    Ok(Btilde2 { module: FModule { generators, tables }, representatives, ideal_degrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizer_supports() {
        assert_eq!(row_symmetrizer().support_size(), 12);
        assert_eq!(col_symmetrizer().support_size(), 12);
    }

    #[test]
    fn symmetrizer_is_idempotent() {
        let e = young_symmetrizer();
        assert_eq!(e.multiply(&e), e);
        assert!(e.support_size() > 0);
    }

    #[test]
    fn equal_column_entries_are_annihilated() {
        // Columns are {1,4,6}, {2,5}, {3}: equal entries in a column pair up
        // under the column antisymmetrization.
        let e = young_symmetrizer();
        for t in [[3, 1, 0, 3, 0, 0], [1, 3, 0, 7, 3, 1], [7, 1, 0, 1, 1, 7]] {
            assert!(e.apply(&TElement::basis(t)).is_zero(), "{}", nyd_string(&t));
        }
    }

    #[test]
    fn small_alphabet_image_dimensions() {
        assert_eq!(apply_symmetrizer(1), 0);
        assert_eq!(apply_symmetrizer(2), 0);
        assert_eq!(apply_symmetrizer(3), 8);
    }

    #[test]
    fn k_module_validates() {
        let k = build_k();
        k.validate(9).expect("K is Adem-consistent");
        let x0 = ModuleElement::generator(0);
        assert_eq!(k.act_sq(1, &x0), ModuleElement::generator(1));
        assert!(k.act_sq(2, &x0).is_zero());
        assert_eq!(k.act_sq(4, &ModuleElement::generator(2)), ModuleElement::generator(3));
    }

    #[test]
    fn tensor_action_matches_k_module_on_single_slots() {
        let k = build_k();
        let gens = [0u8, 1, 3, 7];
        for (slot_val, gen_idx) in gens.iter().zip(0..4) {
            for n in 1..=8u32 {
                let mut t = [0u8; 6];
                t[2] = *slot_val; // slot 3 carries the generator, rest x₀
                let tensor_img = act_sq(n, &TElement::basis(t));
                let module_img = k.act_sq(n, &ModuleElement::generator(gen_idx));
                // Project the tensor image onto terms with x₀ elsewhere.
                let mut projected = crate::fmodule::ModuleElement::zero();
                for (s, c) in tensor_img.terms() {
                    if (0..6).filter(|&m| m != 2).all(|m| s[m] == 0) {
                        let gi = gens.iter().position(|&g| g == s[2]).unwrap();
                        projected.add_term(gi, c.clone());
                    }
                }
                // With x₀ in the other slots, those slots absorb only j = 1
                // (x₀ → x₁); terms keeping them at x₀ agree with K itself.
                for (i, c) in module_img.comps() {
                    assert_eq!(projected.coefficient(i), *c, "Sq{n} on x{slot_val}");
                }
            }
        }
    }

    #[test]
    fn sigma6_equivariance_and_symmetrizer_commutation() {
        let e = young_symmetrizer();
        let sigma: Perm = [1, 2, 0, 4, 3, 5];
        let samples = [
            TElement::basis([3, 1, 0, 1, 0, 0]),
            TElement::term(GroundElement::tau(), [7, 1, 0, 3, 1, 1]),
            {
                let mut v = TElement::basis([3, 3, 1, 0, 7, 0]);
                v.add(&TElement::term(GroundElement::rho(), [1, 1, 1, 3, 0, 7]));
                v
            },
        ];
        for v in &samples {
            for n in 0..=8u32 {
                let lhs = act_sq(n, &GroupAlgebraElement::from_perms([sigma]).apply(v));
                let rhs = GroupAlgebraElement::from_perms([sigma]).apply(&act_sq(n, v));
                assert_eq!(lhs, rhs, "Sq{n} equivariance");
                assert_eq!(act_sq(n, &e.apply(v)), e.apply(&act_sq(n, v)), "ē commutes with Sq{n}");
            }
        }
    }

    #[test]
    fn iota_action_table_matches_closed_forms() {
        for entry in iota_actions() {
            assert_eq!(
                entry.computed,
                entry.golden,
                "{}: computed {} ≠ golden {}",
                entry.label,
                entry.computed.display(),
                entry.golden.display()
            );
        }
    }

    #[test]
    fn lemma57_identities_hold() {
        check_lemma57().unwrap();
    }
}

