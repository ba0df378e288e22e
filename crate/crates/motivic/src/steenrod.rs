//! Elements of the R-motivic Steenrod algebra `A^R` and their normalization.
//!
//! An element is a left-`M`-coefficient combination of *admissible* monomials
//! `Sq^{a₁}⋯Sq^{a_k}` (`aᵢ ≥ 2aᵢ₊₁`). Arbitrary words in `Sq^n` with
//! interleaved coefficients are brought to this normal form by the motivic
//! Adem relations (all four parity cases, with their parity restrictions) and
//! the coefficient commutation rule
//! `Sq^n∘(c·) = Σᵢ τ^{twist}·(Sq^i c)·∘Sq^{n−i}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use once_cell::sync::Lazy;

use crate::ground::{binom_mod2, monomial_string, sq_on_coeff, Bidegree, GroundElement};
use crate::linalg::Echelon;

/// One factor of a non-normalized word: a Steenrod square or a coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Sq(u32),
    Coef(GroundElement),
}

/// A word in `Sq^n` and `M`-coefficients; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SqWord(pub Vec<Factor>);

impl SqWord {
    pub fn from_squares(squares: &[u32]) -> Self {
        SqWord(squares.iter().map(|&n| Factor::Sq(n)).collect())
    }
}

/// An admissible monomial `Sq^{a₁}⋯Sq^{a_k}`, stored as the exponent sequence.
pub type AdmissibleKey = Vec<u32>;

pub fn is_admissible(key: &[u32]) -> bool {
    key.iter().all(|&a| a >= 1) && key.windows(2).all(|p| p[0] >= 2 * p[1])
}

/// The bidegree of an admissible (indeed any) monomial key.
pub fn key_bidegree(key: &[u32]) -> Bidegree {
    key.iter().fold(Bidegree::ZERO, |d, &a| d + Bidegree::of_sq(a))
}

/// An element of `A^R` in admissible normal form: a map from admissible keys
/// to nonzero left coefficients in `M`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct SteenrodElement {
    terms: BTreeMap<AdmissibleKey, GroundElement>,
}

impl SteenrodElement {
    pub fn zero() -> Self {
        SteenrodElement::default()
    }

    pub fn one() -> Self {
        SteenrodElement::term(GroundElement::one(), vec![])
    }

    pub fn sq(n: u32) -> Self {
        if n == 0 {
            SteenrodElement::one()
        } else {
            SteenrodElement::term(GroundElement::one(), vec![n])
        }
    }

    pub fn term(coef: GroundElement, key: AdmissibleKey) -> Self {
        debug_assert!(is_admissible(&key));
        let mut e = SteenrodElement::zero();
        e.add_term(&key, coef);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AdmissibleKey, &GroundElement)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: &[u32], coef: GroundElement) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(key) {
            Some(c) => {
                *c += coef;
                if c.is_zero() {
                    self.terms.remove(key);
                }
            }
            None => {
                self.terms.insert(key.to_vec(), coef);
            }
        }
    }

    pub fn add(&mut self, other: &SteenrodElement) {
        for (k, c) in &other.terms {
            self.add_term(k, c.clone());
        }
    }

    /// Left multiplication by a coefficient.
    pub fn coeff_mul(&self, c: &GroundElement) -> SteenrodElement {
        let mut out = SteenrodElement::zero();
        for (k, d) in &self.terms {
            out.add_term(k, c * d);
        }
        out
    }

    /// The common bidegree of a nonzero homogeneous element
    /// (coefficient bidegree + operator bidegree per term).
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut degs = self
            .terms
            .iter()
            .map(|(k, c)| c.bidegree().map(|d| d + key_bidegree(k)));
        let d = degs.next()??;
        degs.all(|e| e == Some(d)).then_some(d)
    }

    /// Sparse F₂ coordinates `(key, τ-exp, ρ-exp)`, for linear algebra.
    pub fn coordinates(&self) -> BTreeSet<(AdmissibleKey, u32, u32)> {
        let mut v = BTreeSet::new();
        for (k, c) in &self.terms {
            for (a, b) in c.monomials() {
                v.insert((k.clone(), a, b));
            }
        }
        v
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (key, coef) in &self.terms {
            for (a, b) in coef.monomials() {
                let mut tokens = Vec::new();
                if (a, b) != (0, 0) {
                    tokens.push(monomial_string(a, b));
                }
                for &n in key {
                    tokens.push(format!("Sq{n}"));
                }
                if tokens.is_empty() {
                    tokens.push("1".to_string());
                }
                parts.push(tokens.join(" "));
            }
        }
        parts.sort();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Count of Adem summands whose binomial coefficient is odd but which are
/// excluded by the parity restrictions of the remark following Prop A.1
/// (cases 2 and 3). Logged, never silently dropped, so the open question of
/// whether the restrictions are redundant can be answered empirically; see
/// [`parity_exclusions`].
static PARITY_EXCLUSIONS: AtomicU64 = AtomicU64::new(0);

pub fn parity_exclusions() -> u64 {
    PARITY_EXCLUSIONS.load(Ordering::Relaxed)
}

/// The right-hand side of the motivic Adem relation for `Sq^a Sq^b`
/// (`0 < a < 2b`), as `(coefficient, upper index, optional lower index)`
/// triples: the term `coef·Sq^{p}Sq^{j}` with `j = 0` meaning `Sq^p` alone.
///
/// The four parity cases of Prop A.1:
/// * `a, b` even: `Σ_j τ^{j mod 2}·C(b−1−j, a−2j)·Sq^{a+b−j}Sq^j`;
/// * `a` odd, `b` even: `C(b−1−j, a−2j)·Sq^{a+b−j}Sq^j` for even `j` plus
///   `ρ·C(b−j, a−2j)·Sq^{a+b−j−1}Sq^j` for odd `j`;
/// * `a` even, `b` odd: `C(b−1−j, a−2j)·Sq^{a+b−j}Sq^j` plus
///   `ρ·C(b−1−j, a+1−2j)·Sq^{a+b−j−1}Sq^j` for odd `j`;
/// * `a, b` odd: `C(b−1−j, a−2j)·Sq^{a+b−j}Sq^j`.
pub fn adem_terms(a: u32, b: u32) -> Vec<(GroundElement, u32, u32)> {
    assert!(0 < a && a < 2 * b, "Adem relation requires 0 < a < 2b, got a={a} b={b}");
    let mut out = Vec::new();
    let jmax = a / 2; // = (a−1)/2 for odd a by integer division
    for j in 0..=jmax {
        let c_main = b >= 1 + j && binom_mod2(b - 1 - j, a.wrapping_sub(2 * j));
        let main_allowed = match (a % 2, b % 2) {
            (1, 0) => j % 2 == 0, // case 2: left term only for even j
            _ => true,
        };
        if c_main && a >= 2 * j {
            if main_allowed {
                let coef = if a % 2 == 0 && b % 2 == 0 {
                    GroundElement::monomial(j % 2, 0) // τ^{j mod 2}
                } else {
                    GroundElement::one()
                };
                out.push((coef, a + b - j, j));
            } else {
                PARITY_EXCLUSIONS.fetch_add(1, Ordering::Relaxed);
            }
        }
        // ρ-corrected second terms of cases 2 and 3, only for odd j.
        let (c_rho, rho_allowed) = match (a % 2, b % 2) {
            (1, 0) => (b >= j && a >= 2 * j && binom_mod2(b - j, a - 2 * j), j % 2 == 1),
            (0, 1) => (
                b >= 1 + j && a + 1 >= 2 * j && binom_mod2(b - 1 - j, a + 1 - 2 * j),
                j % 2 == 1,
            ),
            _ => (false, false),
        };
        if c_rho {
            if rho_allowed {
                out.push((GroundElement::rho(), a + b - j - 1, j));
            } else if matches!((a % 2, b % 2), (1, 0) | (0, 1)) {
                PARITY_EXCLUSIONS.fetch_add(1, Ordering::Relaxed);
            }
        }
    }
    out.retain(|(c, p, j)| !c.is_zero() && (*j == 0 || *p > 0));
    out
}

type SqKeyCache = Mutex<HashMap<(u32, AdmissibleKey), SteenrodElement>>;
static MUL_CACHE: Lazy<SqKeyCache> = Lazy::new(|| Mutex::new(HashMap::new()));

/// `Sq^n ·` an admissible monomial, in normal form.
pub fn mul_sq_key(n: u32, key: &[u32]) -> SteenrodElement {
    if n == 0 {
        return SteenrodElement::term(GroundElement::one(), key.to_vec());
    }
    if key.is_empty() {
        return SteenrodElement::sq(n);
    }
    let cache_key = (n, key.to_vec());
    if let Some(hit) = MUL_CACHE.lock().unwrap().get(&cache_key) {
        return hit.clone();
    }
    let (b, rest) = (key[0], &key[1..]);
    let result = if n >= 2 * b {
        let mut k = Vec::with_capacity(key.len() + 1);
        k.push(n);
        k.extend_from_slice(key);
        SteenrodElement::term(GroundElement::one(), k)
    } else {
        // Sq^n Sq^b = Σ coef·Sq^p Sq^j; each summand is re-normalized
        // recursively. Termination: each rewrite strictly decreases the
        // moment ordering Σ i·aᵢ (the classical argument applies verbatim;
        // the τ/ρ coefficients commute past squares by strictly shorter
        // operator words).
        let mut acc = SteenrodElement::zero();
        for (coef, p, j) in adem_terms(n, b) {
            let inner = mul_sq_key(j, rest);
            let outer = left_mul_sq(p, &inner);
            acc.add(&outer.coeff_mul(&coef));
        }
        acc
    };
    MUL_CACHE.lock().unwrap().insert(cache_key, result.clone());
    result
}

/// `Sq^n ·` an element in normal form, commuting coefficients to the left
/// with the motivic Cartan formula:
///
/// * `n` even: `Sq^n∘(c·) = Σ_{i+j=n} τ^{[i,j both odd]}·(Sq^i c)·∘Sq^j`,
/// * `n` odd:  `Sq^n∘(c·) = Σ_{i+j=n} (Sq^i c)·∘Sq^j
///   + ρ·Σ_{i+j=n−1, i,j odd} (Sq^i c)·∘Sq^j`
///
/// (the odd case is `β` applied to the even case, using `β(τu) = ρu + τβu`).
pub fn left_mul_sq(n: u32, elem: &SteenrodElement) -> SteenrodElement {
    let mut out = SteenrodElement::zero();
    for (key, c) in elem.terms() {
        for i in 0..=n {
            let ci = sq_on_coeff(i, c);
            if ci.is_zero() {
                continue;
            }
            let j = n - i;
            let factor = if n % 2 == 0 && i % 2 == 1 {
                GroundElement::tau()
            } else {
                GroundElement::one()
            };
            out.add(&mul_sq_key(j, key).coeff_mul(&(&factor * &ci)));
        }
        if n % 2 == 1 {
            for i in (1..n).step_by(2) {
                let j = n - 1 - i;
                if j % 2 == 0 {
                    continue;
                }
                let ci = sq_on_coeff(i, c);
                if ci.is_zero() {
                    continue;
                }
                out.add(&mul_sq_key(j, key).coeff_mul(&(&GroundElement::rho() * &ci)));
            }
        }
    }
    out
}

/// Normalize a word to admissible form (right-to-left evaluation).
pub fn adem_reduce(word: &SqWord) -> SteenrodElement {
    let mut acc = SteenrodElement::one();
    for factor in word.0.iter().rev() {
        acc = match factor {
            Factor::Sq(n) => left_mul_sq(*n, &acc),
            Factor::Coef(c) => acc.coeff_mul(c),
        };
    }
    acc
}

/// The product in `A^R`, by bilinear extension of `adem_reduce` over
/// concatenated words.
pub fn multiply(x: &SteenrodElement, y: &SteenrodElement) -> SteenrodElement {
    let mut out = SteenrodElement::zero();
    for (kx, cx) in x.terms() {
        let mut partial = y.clone();
        for &n in kx.iter().rev() {
            partial = left_mul_sq(n, &partial);
        }
        out.add(&partial.coeff_mul(cx));
    }
    out
}

/// The Milnor primitives `Q₀ = Sq¹`, `Q₁ = [Sq², Q₀]`, `Q̃₂ = [Sq⁴, Q₁]`,
/// `Q₂ = Q̃₂ + ρSq⁵Sq¹`, in admissible form.
pub struct MilnorPrimitives {
    pub q0: SteenrodElement,
    pub q1: SteenrodElement,
    pub q2_tilde: SteenrodElement,
    pub q2: SteenrodElement,
}

pub fn milnor_primitives() -> MilnorPrimitives {
    let commutator = |x: &SteenrodElement, y: &SteenrodElement| {
        let mut c = multiply(x, y);
        c.add(&multiply(y, x));
        c
    };
    let q0 = SteenrodElement::sq(1);
    let q1 = commutator(&SteenrodElement::sq(2), &q0);
    let q2_tilde = commutator(&SteenrodElement::sq(4), &q1);
    let mut q2 = q2_tilde.clone();
    q2.add(&SteenrodElement::term(GroundElement::rho(), vec![5, 1]));
    MilnorPrimitives { q0, q1, q2_tilde, q2 }
}

/// Specialization targets: `A^R/(ρ) ≅ A^C` and the classical algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecializeMode {
    CMotivic,
    Classical,
}

/// Specialize coefficients: `ρ ↦ 0` (C-motivic), additionally `τ ↦ 1`
/// (classical).
pub fn specialize(x: &SteenrodElement, mode: SpecializeMode) -> SteenrodElement {
    let mut out = SteenrodElement::zero();
    for (key, c) in x.terms() {
        let spec = GroundElement::from_monomials(c.monomials().filter(|&(_, b)| b == 0).map(
            |(a, _)| match mode {
                SpecializeMode::CMotivic => (a, 0),
                SpecializeMode::Classical => (0, 0),
            },
        ));
        out.add_term(key, spec);
    }
    out
}

/// One element of a subalgebra span: a product of the generators
/// `Sq^{2^k}` (the defining word, leftmost factor first) together with its
/// admissible normal form.
#[derive(Debug, Clone)]
pub struct SubalgebraElement {
    pub word: Vec<u32>,
    pub elem: SteenrodElement,
    pub deg: Bidegree,
}

/// The sub-`M`-algebra `A^R(n)` generated by `Sq¹, …, Sq^{2ⁿ}`, spanned
/// within a degree window, organized per bidegree with a graded-Nakayama
/// choice of `M`-module generators.
pub struct Subalgebra {
    pub n: u32,
    pub window_s: i32,
    /// F₂-independent reduced products of the generators, in BFS order
    /// (increasing topological degree, then lexicographic defining word).
    pub elements: Vec<SubalgebraElement>,
    /// Indices into `elements` of the chosen minimal `M`-generating set.
    pub generators: Vec<usize>,
}

type Coord = (AdmissibleKey, u32, u32);

impl Subalgebra {
    /// Span all products of the generators with topological degree ≤
    /// `window_s` and select a minimal `M`-generating set by graded Nakayama.
    ///
    /// Products are expanded breadth-first by increasing topological degree;
    /// a product is kept only if it is F₂-independent of the `M`-span of the
    /// products already found. Skipping dependent products is complete
    /// because the `M`-span of all products is closed under left
    /// multiplication by each generator `Sq^g`: commuting a coefficient past
    /// `Sq^g` only produces `Sq^{g−i}` with `g−i < g ≤ 2ⁿ`, and every such
    /// square is itself a product of the generators.
    pub fn span(n: u32, window_s: i32) -> Subalgebra {
        assert!(n == 1 || n == 2);
        let gens: Vec<u32> = (0..=n).map(|k| 1 << k).collect();
        let mut sub = Subalgebra {
            n,
            window_s,
            elements: vec![SubalgebraElement {
                word: vec![],
                elem: SteenrodElement::one(),
                deg: Bidegree::ZERO,
            }],
            generators: Vec::new(),
        };
        for s in 1..=window_s {
            // Candidates at topological degree s, from expanding lower reps.
            let mut candidates: Vec<SubalgebraElement> = Vec::new();
            for e in &sub.elements {
                for &g in &gens {
                    if e.deg.s + g as i32 != s {
                        continue;
                    }
                    let elem = left_mul_sq(g, &e.elem);
                    if elem.is_zero() {
                        continue;
                    }
                    let mut word = vec![g];
                    word.extend_from_slice(&e.word);
                    let deg = e.deg + Bidegree::of_sq(g);
                    candidates.push(SubalgebraElement { word, elem, deg });
                }
            }
            candidates.sort_by(|a, b| (a.deg.w, &a.word).cmp(&(b.deg.w, &b.word)));
            for cand in candidates {
                let mut ech = sub.span_echelon(cand.deg);
                if ech.insert(cand.elem.coordinates()) {
                    sub.elements.push(cand);
                }
            }
        }
        sub.select_generators();
        sub
    }

    /// Echelon basis of the bidegree-`deg` piece of the `M`-span.
    pub fn span_echelon(&self, deg: Bidegree) -> Echelon<Coord> {
        self.echelon_of_multiples(deg, |_, _| true)
    }

    fn echelon_of_multiples(
        &self,
        deg: Bidegree,
        keep: impl Fn(u32, u32) -> bool,
    ) -> Echelon<Coord> {
        let mut ech = Echelon::new();
        for e in &self.elements {
            let d = deg - e.deg;
            // Monomial τ^a ρ^b has bidegree (b, a+b).
            let b = d.s;
            let a = d.w - d.s;
            if b >= 0 && a >= 0 && keep(a as u32, b as u32) {
                let shifted: BTreeSet<Coord> = e
                    .elem
                    .coordinates()
                    .into_iter()
                    .map(|(k, x, y)| (k, x + a as u32, y + b as u32))
                    .collect();
                ech.insert(shifted);
            }
        }
        ech
    }

    /// F₂-dimension of the bidegree-`deg` piece.
    pub fn dim(&self, deg: Bidegree) -> usize {
        self.span_echelon(deg).rank()
    }

    /// Whether a homogeneous element lies in the span.
    pub fn contains(&self, x: &SteenrodElement) -> bool {
        match x.bidegree() {
            None => x.is_zero(),
            Some(d) => self.span_echelon(d).contains(x.coordinates()),
        }
    }

    fn select_generators(&mut self) {
        // A minimal generating set: per bidegree, extend the echelon of
        // (τ,ρ)-decomposables by the reps at that exact bidegree; the ones
        // that grow the rank are generators (graded Nakayama).
        let degrees: BTreeSet<Bidegree> = self.elements.iter().map(|e| e.deg).collect();
        let mut generators = Vec::new();
        for deg in degrees {
            let mut ech = self.echelon_of_multiples(deg, |a, b| (a, b) != (0, 0));
            for (i, e) in self.elements.iter().enumerate() {
                if e.deg == deg && ech.insert(e.elem.coordinates()) {
                    generators.push(i);
                }
            }
        }
        self.generators = generators;
    }

    /// Bidegrees of the chosen generators, in order.
    pub fn generator_degrees(&self) -> Vec<Bidegree> {
        self.generators.iter().map(|&i| self.elements[i].deg).collect()
    }

    pub fn generator_elements(&self) -> Vec<&SubalgebraElement> {
        self.generators.iter().map(|&i| &self.elements[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq_word(squares: &[u32]) -> SteenrodElement {
        adem_reduce(&SqWord::from_squares(squares))
    }

    #[test]
    fn example_a3_relations() {
        // Sq²Sq² = τSq³Sq¹.
        assert_eq!(sq_word(&[2, 2]), SteenrodElement::term(GroundElement::tau(), vec![3, 1]));
        // Sq³Sq² = ρSq³Sq¹.
        assert_eq!(sq_word(&[3, 2]), SteenrodElement::term(GroundElement::rho(), vec![3, 1]));
        // Sq²Sq³ = Sq⁵ + Sq⁴Sq¹ + ρSq³Sq¹.
        let mut expected = SteenrodElement::sq(5);
        expected.add(&SteenrodElement::term(GroundElement::one(), vec![4, 1]));
        expected.add(&SteenrodElement::term(GroundElement::rho(), vec![3, 1]));
        assert_eq!(sq_word(&[2, 3]), expected);
    }

    #[test]
    fn sq1_sq1_vanishes() {
        assert!(sq_word(&[1, 1]).is_zero());
    }

    #[test]
    fn sq1_sq2_is_sq3() {
        assert_eq!(multiply(&SteenrodElement::sq(1), &SteenrodElement::sq(2)), SteenrodElement::sq(3));
    }

    #[test]
    fn coefficient_commutation() {
        // Sq¹∘(τ·) = τ·Sq¹ + ρ·1.
        let word = SqWord(vec![Factor::Sq(1), Factor::Coef(GroundElement::tau())]);
        let mut expected = SteenrodElement::term(GroundElement::tau(), vec![1]);
        expected.add(&SteenrodElement::term(GroundElement::rho(), vec![]));
        assert_eq!(adem_reduce(&word), expected);
    }

    #[test]
    fn reduce_is_idempotent_and_admissible() {
        for (a, b) in [(2, 2), (2, 3), (3, 4), (5, 6), (7, 4), (6, 7)] {
            let r = sq_word(&[a, b]);
            for (key, c) in r.terms() {
                assert!(is_admissible(key), "inadmissible {key:?} in Sq{a}Sq{b}");
                assert!(!c.is_zero());
            }
            // Re-reducing the reduced terms returns them unchanged.
            let mut again = SteenrodElement::zero();
            for (key, c) in r.terms() {
                again.add(&adem_reduce(&SqWord::from_squares(key)).coeff_mul(c));
            }
            assert_eq!(again, r);
        }
    }

    #[test]
    fn homogeneous_reduction() {
        for (a, b) in [(2, 2), (3, 2), (2, 3), (4, 4), (5, 3), (6, 4), (7, 7)] {
            let r = sq_word(&[a, b]);
            if !r.is_zero() {
                assert_eq!(r.bidegree(), Some(Bidegree::of_sq(a) + Bidegree::of_sq(b)), "Sq{a}Sq{b}");
            }
        }
    }

    #[test]
    fn milnor_primitive_forms() {
        let p = milnor_primitives();
        assert_eq!(p.q0, SteenrodElement::sq(1));
        // Q₁ = Sq³ + Sq²Sq¹.
        let mut q1 = SteenrodElement::sq(3);
        q1.add(&SteenrodElement::term(GroundElement::one(), vec![2, 1]));
        assert_eq!(p.q1, q1);
        // Q₂ − Q̃₂ = ρSq⁵Sq¹.
        let mut diff = p.q2.clone();
        diff.add(&p.q2_tilde);
        assert_eq!(diff, SteenrodElement::term(GroundElement::rho(), vec![5, 1]));
        // Bidegrees (1,0), (3,1), (7,3), (7,3).
        assert_eq!(p.q0.bidegree(), Some(Bidegree::new(1, 0)));
        assert_eq!(p.q1.bidegree(), Some(Bidegree::new(3, 1)));
        assert_eq!(p.q2_tilde.bidegree(), Some(Bidegree::new(7, 3)));
        assert_eq!(p.q2.bidegree(), Some(Bidegree::new(7, 3)));
    }

    #[test]
    fn q_primitives_square_to_zero() {
        let p = milnor_primitives();
        for q in [&p.q0, &p.q1, &p.q2_tilde, &p.q2] {
            assert!(multiply(q, q).is_zero());
        }
    }

    #[test]
    fn specialization_examples() {
        let r = sq_word(&[2, 3]);
        let mut classical = SteenrodElement::sq(5);
        classical.add(&SteenrodElement::term(GroundElement::one(), vec![4, 1]));
        assert_eq!(specialize(&r, SpecializeMode::Classical), classical);
        let rho_term = SteenrodElement::term(GroundElement::rho(), vec![3, 1]);
        assert!(specialize(&rho_term, SpecializeMode::CMotivic).is_zero());
        let tau_term = SteenrodElement::term(GroundElement::tau(), vec![3, 1]);
        assert_eq!(
            specialize(&tau_term, SpecializeMode::Classical),
            SteenrodElement::term(GroundElement::one(), vec![3, 1])
        );
    }

    #[test]
    fn a1_basis_degrees() {
        let a1 = Subalgebra::span(1, 6);
        let mut degs: Vec<(i32, i32)> =
            a1.generator_degrees().iter().map(|d| (d.s, d.w)).collect();
        degs.sort();
        assert_eq!(degs, vec![(0, 0), (1, 0), (2, 1), (3, 1), (3, 1), (4, 1), (5, 2), (6, 2)]);
    }
}
