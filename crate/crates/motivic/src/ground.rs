//! The bigraded ground ring `M = F₂[τ, ρ]` and the Steenrod action on it.
//!
//! Elements are finite sets of monomials `τ^a ρ^b` (coefficients implicitly
//! `1 ∈ F₂`; adding two copies of a monomial cancels it). In the cohomological
//! grading used throughout this crate, `τ` has bidegree `(0,1)` and `ρ` has
//! bidegree `(1,1)`, so `τ^a ρ^b` is homogeneous of bidegree `(b, a+b)`.
//!
//! The Steenrod action is generated by `Sq⁰ = id`, `Sq¹τ = ρ`, `Sq¹ρ = 0`
//! and `Sq^i τ = Sq^i ρ = 0` for `i ≥ 2`, extended to products by the
//! *motivic* Cartan formula: for even `n`,
//! `Sq^n(xy) = Σ_{i+j=n} τ^{[i,j both odd]} Sq^i x·Sq^j y`, and for odd `n`
//! the untwisted sum plus the Bockstein correction
//! `ρ·Σ_{i+j=n−1, i,j odd} Sq^i x·Sq^j y` (apply `β` to the even case using
//! `β(τu) = ρu + τβu`). On a monomial this yields the closed form
//! `Sq^n(τ^a ρ^b) = c_n(a)·τ^{a−⌈n/2⌉} ρ^{n+b}` ([`tau_power_coeff`]),
//! homogeneous of bidegree `input + (n, ⌊n/2⌋)` — the bidegree of `Sq^n`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};

/// A bidegree `(s, w)`: topological degree `s` and motivic weight `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub s: i32,
    pub w: i32,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { s: 0, w: 0 };

    pub fn new(s: i32, w: i32) -> Self {
        Bidegree { s, w }
    }

    /// The bidegree of the operator `Sq^n`: `(n, ⌊n/2⌋)`.
    pub fn of_sq(n: u32) -> Self {
        Bidegree::new(n as i32, (n / 2) as i32)
    }

    /// The bidegree of the monomial `τ^a ρ^b`, namely `(b, a+b)`.
    pub fn of_monomial(a: u32, b: u32) -> Self {
        Bidegree::new(b as i32, (a + b) as i32)
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.s + rhs.s, self.w + rhs.w)
    }
}

impl std::ops::Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.s - rhs.s, self.w - rhs.w)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.w)
    }
}

/// `C(n, k) mod 2` by Lucas' theorem.
pub fn binom_mod2(n: u32, k: u32) -> bool {
    k <= n && (n & k) == k
}

/// An element of `M = F₂[τ, ρ]`: a set of monomials `(a, b) ↦ τ^a ρ^b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroundElement {
    monomials: BTreeSet<(u32, u32)>,
}

impl GroundElement {
    pub fn zero() -> Self {
        GroundElement::default()
    }

    pub fn one() -> Self {
        GroundElement::monomial(0, 0)
    }

    pub fn tau() -> Self {
        GroundElement::monomial(1, 0)
    }

    pub fn rho() -> Self {
        GroundElement::monomial(0, 1)
    }

    /// The single monomial `τ^a ρ^b`.
    pub fn monomial(a: u32, b: u32) -> Self {
        GroundElement { monomials: BTreeSet::from([(a, b)]) }
    }

    pub fn from_monomials(iter: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut e = GroundElement::zero();
        for m in iter {
            e.toggle(m);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monomials.len() == 1 && self.monomials.contains(&(0, 0))
    }

    pub fn monomials(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.monomials.iter().copied()
    }

    /// Whether the unit monomial `τ⁰ρ⁰` occurs, i.e. the element survives
    /// reduction mod `(τ, ρ)`.
    pub fn has_unit(&self) -> bool {
        self.monomials.contains(&(0, 0))
    }

    fn toggle(&mut self, m: (u32, u32)) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    /// Whether every monomial has the same bidegree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.monomials.iter().map(|&(a, b)| Bidegree::of_monomial(a, b));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The common bidegree of a nonzero homogeneous element.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut degs = self.monomials.iter().map(|&(a, b)| Bidegree::of_monomial(a, b));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// The sub-element of monomials of bidegree `deg`.
    pub fn homogeneous_part(&self, deg: Bidegree) -> GroundElement {
        GroundElement {
            monomials: self
                .monomials
                .iter()
                .copied()
                .filter(|&(a, b)| Bidegree::of_monomial(a, b) == deg)
                .collect(),
        }
    }

    pub fn times_monomial(&self, a: u32, b: u32) -> GroundElement {
        GroundElement {
            monomials: self.monomials.iter().map(|&(x, y)| (x + a, y + b)).collect(),
        }
    }

    /// Serialization form: the sorted list of `[a, b]` exponent pairs.
    pub fn exponent_pairs(&self) -> Vec<[u32; 2]> {
        self.monomials.iter().map(|&(a, b)| [a, b]).collect()
    }
}

impl Add for GroundElement {
    type Output = GroundElement;
    fn add(self, rhs: GroundElement) -> GroundElement {
        GroundElement {
            monomials: self.monomials.symmetric_difference(&rhs.monomials).copied().collect(),
        }
    }
}

impl AddAssign for GroundElement {
    fn add_assign(&mut self, rhs: GroundElement) {
        for m in rhs.monomials {
            self.toggle(m);
        }
    }
}

impl Mul for &GroundElement {
    type Output = GroundElement;
    fn mul(self, rhs: &GroundElement) -> GroundElement {
        let mut out = GroundElement::zero();
        for &(a, b) in &self.monomials {
            for &(c, d) in &rhs.monomials {
                out.toggle((a + c, b + d));
            }
        }
        out
    }
}

impl fmt::Display for GroundElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for &(a, b) in &self.monomials {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", monomial_string(a, b))?;
        }
        Ok(())
    }
}

/// Text form of `τ^a ρ^b` in CLI syntax (`t^a r^b`, `1` for the unit).
pub fn monomial_string(a: u32, b: u32) -> String {
    let mut parts = Vec::new();
    match a {
        0 => {}
        1 => parts.push("t".to_string()),
        _ => parts.push(format!("t^{a}")),
    }
    match b {
        0 => {}
        1 => parts.push("r".to_string()),
        _ => parts.push(format!("r^{b}")),
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

/// The two-factor motivic Cartan expansion `Sq^n(xy)` given the lists of
/// `Sq^i x` and `Sq^j y` values (index `i` ↦ `Sq^i` of the factor, for
/// `0 ≤ i ≤ n`). Used by tests and fuzz checks as the reference rule.
pub fn cartan_expand(
    n: u32,
    sq_x: impl Fn(u32) -> GroundElement,
    sq_y: impl Fn(u32) -> GroundElement,
) -> GroundElement {
    let mut out = GroundElement::zero();
    for i in 0..=n {
        let factor = if n % 2 == 0 && i % 2 == 1 {
            GroundElement::tau()
        } else {
            GroundElement::one()
        };
        out += &factor * &(&sq_x(i) * &sq_y(n - i));
    }
    if n % 2 == 1 {
        for i in (1..n).step_by(2) {
            let j = n - 1 - i;
            if j % 2 == 1 {
                out += &GroundElement::rho() * &(&sq_x(i) * &sq_y(j));
            }
        }
    }
    out
}

/// The mod-2 coefficient of `Sq^n(τ^a) = c·τ^{a−⌈n/2⌉} ρ^n`, by the
/// recursion obtained from splitting off one `τ`-factor with the motivic
/// Cartan formula (`Sq^j τ` is `τ, ρ, 0, 0, …`):
///
/// * `n` even: `c_n(a) = c_n(a−1) + c_{n−1}(a−1)` (the `i = 1` split is an
///   odd–odd pair and carries `τ`),
/// * `n` odd:  `c_n(a) = c_n(a−1) + c_{n−1}(a−1) + c_{n−2}(a−1)` (the last
///   summand is the `ρ`-correction `ρ·Sq¹τ·Sq^{n−2}` of the odd Cartan
///   formula),
///
/// with `c_0(a) = 1` and `c_n(0) = [n = 0]`.
pub fn tau_power_coeff(n: u32, a: u32) -> bool {
    let n = n as usize;
    let mut row = vec![false; n + 1];
    row[0] = true;
    for _ in 0..a {
        let prev = row.clone();
        for m in (1..=n).rev() {
            row[m] = prev[m] ^ prev[m - 1] ^ (m % 2 == 1 && m >= 2 && prev[m - 2]);
        }
    }
    row[n]
}

/// `Sq^n` acting on a homogeneous `c ∈ M`.
///
/// `ρ` is `Sq`-inert (`Sq^i ρ = 0` for `i ≥ 1`, forced by bidegree), so on a
/// monomial `Sq^n(τ^a ρ^b) = c_n(a)·τ^{a−⌈n/2⌉} ρ^{n+b}` with the
/// [`tau_power_coeff`] coefficient. The output is homogeneous of bidegree
/// `bidegree(c) + (n, ⌊n/2⌋)`.
pub fn sq_on_coeff(n: u32, c: &GroundElement) -> GroundElement {
    assert!(c.is_homogeneous(), "sq_on_coeff requires a homogeneous coefficient, got {c}");
    if n == 0 {
        return c.clone();
    }
    let mut out = GroundElement::zero();
    for (a, b) in c.monomials() {
        if n.div_ceil(2) <= a && tau_power_coeff(n, a) {
            out.toggle((a - n.div_ceil(2), b + n));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_bidegrees() {
        assert_eq!(GroundElement::tau().bidegree(), Some(Bidegree::new(0, 1)));
        assert_eq!(GroundElement::rho().bidegree(), Some(Bidegree::new(1, 1)));
        assert_eq!(GroundElement::monomial(2, 3).bidegree(), Some(Bidegree::new(3, 5)));
    }

    #[test]
    fn char_two_arithmetic() {
        let t = GroundElement::tau();
        let r = GroundElement::rho();
        let s = t.clone() + r.clone();
        // (τ+ρ)² = τ² + ρ² (Frobenius).
        assert_eq!(&s * &s, GroundElement::monomial(2, 0) + GroundElement::monomial(0, 2));
        assert_eq!(t.clone() + t.clone(), GroundElement::zero());
        assert_eq!(&GroundElement::one() * &r, r);
    }

    #[test]
    fn sq_on_generators() {
        assert_eq!(sq_on_coeff(1, &GroundElement::tau()), GroundElement::rho());
        assert_eq!(sq_on_coeff(1, &GroundElement::rho()), GroundElement::zero());
        assert_eq!(sq_on_coeff(2, &GroundElement::tau()), GroundElement::zero());
        assert_eq!(sq_on_coeff(2, &GroundElement::rho()), GroundElement::zero());
        let c = GroundElement::monomial(3, 2);
        assert_eq!(sq_on_coeff(0, &c), c);
        // Odd-case Bockstein corrections: Sq³τ² = ρ³, Sq⁴τ³ = τρ⁴.
        assert_eq!(sq_on_coeff(3, &GroundElement::monomial(2, 0)), GroundElement::monomial(0, 3));
        assert_eq!(sq_on_coeff(4, &GroundElement::monomial(3, 0)), GroundElement::monomial(1, 4));
    }

    #[test]
    fn sq2_tau_squared_is_tau_rho_squared() {
        // Motivic Cartan: Sq²(τ·τ) = τ·(Sq¹τ)(Sq¹τ) = τρ². The twist τ is
        // forced by weight homogeneity: bidegree must rise by (2,1).
        let t2 = GroundElement::monomial(2, 0);
        assert_eq!(sq_on_coeff(2, &t2), GroundElement::monomial(1, 2));
        assert_eq!(
            sq_on_coeff(2, &t2).bidegree(),
            Some(Bidegree::new(0, 2) + Bidegree::of_sq(2))
        );
    }

    #[test]
    fn bidegree_bookkeeping() {
        for a in 0..6u32 {
            for b in 0..4u32 {
                let c = GroundElement::monomial(a, b);
                for n in 0..8u32 {
                    let out = sq_on_coeff(n, &c);
                    if let Some(d) = out.bidegree() {
                        assert_eq!(d, Bidegree::of_monomial(a, b) + Bidegree::of_sq(n));
                    }
                }
            }
        }
    }

    #[test]
    fn sq1_is_a_differential() {
        for a in 0..8u32 {
            for b in 0..8u32 {
                let c = GroundElement::monomial(a, b);
                assert!(sq_on_coeff(1, &sq_on_coeff(1, &c)).is_zero());
            }
        }
    }

    #[test]
    fn cartan_on_monomials() {
        // The total action is multiplicative for the binary motivic Cartan
        // rule, exactly on all monomials.
        for n in 0..=8u32 {
            for a in 0..6u32 {
                for a2 in 0..6u32 {
                    let c = GroundElement::monomial(a, 1);
                    let d = GroundElement::monomial(a2, 0);
                    let lhs = sq_on_coeff(n, &(&c * &d));
                    let rhs =
                        cartan_expand(n, |i| sq_on_coeff(i, &c), |j| sq_on_coeff(j, &d));
                    assert_eq!(lhs, rhs, "n={n} a={a} a2={a2}");
                }
            }
        }
    }
}
