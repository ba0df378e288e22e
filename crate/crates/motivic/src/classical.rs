//! An independent implementation of the classical mod-2 Steenrod algebra and
//! finite modules over it.
//!
//! Deliberately self-contained (its own Adem reducer, not a specialization of
//! the motivic one) so it can serve as a cross-check oracle for the motivic
//! normalization and as the target of the underlying-spectrum functor.

use std::collections::{BTreeMap, BTreeSet};

use crate::ground::binom_mod2;
use crate::linalg::Echelon;

/// An element of the classical mod-2 Steenrod algebra: an F₂-combination of
/// admissible monomials, each a strictly-admissible exponent sequence.
pub type ClassicalElement = BTreeSet<Vec<u32>>;

fn toggle(e: &mut ClassicalElement, key: Vec<u32>) {
    if !e.remove(&key) {
        e.insert(key);
    }
}

/// The classical Adem relation `Sq^a Sq^b = Σ_j C(b−1−j, a−2j)·Sq^{a+b−j}Sq^j`
/// for `0 < a < 2b`, as `(upper, lower)` pairs with `lower = 0` meaning a
/// single square.
pub fn classical_adem_terms(a: u32, b: u32) -> Vec<(u32, u32)> {
    assert!(0 < a && a < 2 * b);
    (0..=a / 2)
        .filter(|&j| b >= 1 + j && a >= 2 * j && binom_mod2(b - 1 - j, a - 2 * j))
        .map(|j| (a + b - j, j))
        .collect()
}

fn mul_sq_key(n: u32, key: &[u32]) -> ClassicalElement {
    if n == 0 {
        return ClassicalElement::from([key.to_vec()]);
    }
    let Some((&b, rest)) = key.split_first() else {
        return ClassicalElement::from([vec![n]]);
    };
    if n >= 2 * b {
        let mut k = vec![n];
        k.extend_from_slice(key);
        return ClassicalElement::from([k]);
    }
    let mut out = ClassicalElement::new();
    for (p, j) in classical_adem_terms(n, b) {
        for inner in mul_sq_key(j, rest) {
            for term in mul_sq_key(p, &inner) {
                toggle(&mut out, term);
            }
        }
    }
    out
}

/// Normalize a word of squares to admissible form.
pub fn classical_reduce(squares: &[u32]) -> ClassicalElement {
    let mut acc = ClassicalElement::from([vec![]]);
    for &n in squares.iter().rev() {
        let mut next = ClassicalElement::new();
        for key in &acc {
            for term in mul_sq_key(n, key) {
                toggle(&mut next, term);
            }
        }
        acc = next;
    }
    acc
}

/// An F₂-vector in a classical module, as a set of basis indices.
pub type FVec = BTreeSet<usize>;

/// A finite module over the classical Steenrod algebra, presented by an
/// F₂-basis with degrees and action tables for the generators `Sq^{2^k}`.
#[derive(Debug, Clone)]
pub struct ClassicalModule {
    pub names: Vec<String>,
    pub degrees: Vec<i32>,
    /// `tables[&g][i]` = `Sq^g` applied to basis element `i`, for `g` a power
    /// of two present in the table.
    pub tables: BTreeMap<u32, Vec<FVec>>,
}

impl ClassicalModule {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    fn max_degree_gap(&self) -> i32 {
        let (lo, hi) = self
            .degrees
            .iter()
            .fold((i32::MAX, i32::MIN), |(l, h), &d| (l.min(d), h.max(d)));
        if self.degrees.is_empty() {
            0
        } else {
            hi - lo
        }
    }

    /// `Sq^n` on a vector, by the power-of-two recursion: `Sq^{2^k}` from the
    /// table (an absent table entry is an error unless the target degree is
    /// out of range), otherwise `Sq^n = Sq^a Sq^b + Σ_{j≥1} c_j Sq^{n−j}Sq^j`
    /// with `b` the largest power of two below `n` and `a = n − b` (the
    /// `j = 0` Adem coefficient `C(b−1, a)` is always odd).
    ///
    /// Panics if the recursion needs a `Sq^{2^k}` table that is missing on a
    /// populated degree; [`ClassicalModule::try_act_sq`] reports that case as
    /// an error instead.
    pub fn act_sq(&self, n: u32, v: &FVec) -> FVec {
        self.try_act_sq(n, v).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_act_sq(&self, n: u32, v: &FVec) -> Result<FVec, String> {
        if n == 0 || v.is_empty() {
            return Ok(v.clone());
        }
        if n.is_power_of_two() {
            if let Some(table) = self.tables.get(&n) {
                let mut out = FVec::new();
                for &i in v {
                    for &t in &table[i] {
                        if !out.remove(&t) {
                            out.insert(t);
                        }
                    }
                }
                return Ok(out);
            }
            // No table row: legitimate only when the target degree is empty.
            let out_of_range = v
                .iter()
                .all(|&i| !self.degrees.contains(&(self.degrees[i] + n as i32)));
            return if out_of_range {
                Ok(FVec::new())
            } else {
                Err(format!("missing Sq{n} table on populated degree"))
            };
        }
        let b = 1u32 << (31 - n.leading_zeros());
        let a = n - b;
        let mut out = self.try_act_sq(a, &self.try_act_sq(b, v)?)?;
        for (p, j) in classical_adem_terms(a, b) {
            if j >= 1 {
                let w = self.try_act_sq(p, &self.try_act_sq(j, v)?)?;
                out = crate::linalg::xor(&out, &w);
            }
        }
        Ok(out)
    }

    /// The JSON form of the module: the motivic schema with integer `deg`
    /// fields and unit coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let generators: Vec<_> = self
            .names
            .iter()
            .zip(&self.degrees)
            .map(|(n, d)| json!({ "name": n, "deg": d }))
            .collect();
        let mut actions = serde_json::Map::new();
        for (&g, table) in &self.tables {
            let mut rows = serde_json::Map::new();
            for (i, row) in table.iter().enumerate() {
                if row.is_empty() {
                    continue;
                }
                let terms: Vec<_> =
                    row.iter().map(|&j| json!({ "coef": [[0, 0]], "gen": self.names[j] })).collect();
                rows.insert(self.names[i].clone(), serde_json::Value::Array(terms));
            }
            actions.insert(format!("Sq{g}"), serde_json::Value::Object(rows));
        }
        json!({ "generators": generators, "actions": actions })
    }

    /// Apply an element of the classical algebra.
    pub fn act(&self, x: &ClassicalElement, v: &FVec) -> FVec {
        let mut out = FVec::new();
        for key in x {
            let mut w = v.clone();
            for &n in key.iter().rev() {
                w = self.act_sq(n, &w);
            }
            out = crate::linalg::xor(&out, &w);
        }
        out
    }

    /// Check all Adem relations `Sq^aSq^b` instance-wise on every basis
    /// element, for `a + b` up to the degree spread of the module. Relations
    /// whose evaluation needs a `Sq^{2^k}` table the module does not carry
    /// (e.g. `Sq⁵` on a module with only `Sq¹, Sq²` tables) do not constrain
    /// the module and are skipped.
    pub fn validate(&self) -> Result<(), String> {
        let bound = self.max_degree_gap() as u32;
        for a in 1..=bound {
            for b in 1..=bound {
                if a >= 2 * b || a + b > bound {
                    continue;
                }
                for i in 0..self.dim() {
                    let v = FVec::from([i]);
                    let eval = || -> Result<(FVec, FVec), String> {
                        let lhs = self.try_act_sq(a, &self.try_act_sq(b, &v)?)?;
                        let mut rhs = FVec::new();
                        for (p, j) in classical_adem_terms(a, b) {
                            let w = self.try_act_sq(p, &self.try_act_sq(j, &v)?)?;
                            rhs = crate::linalg::xor(&rhs, &w);
                        }
                        Ok((lhs, rhs))
                    };
                    let Ok((lhs, rhs)) = eval() else { continue };
                    if lhs != rhs {
                        return Err(format!(
                            "Adem relation Sq{a}Sq{b} fails on basis element {}",
                            self.names[i]
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// An F₂-basis of the classical subalgebra `A(n)` (`n ≤ 2`), as defining
/// words in the generators `Sq^{2^k}`; BFS over products with echelon
/// independence filtering, as in the motivic case.
pub fn classical_subalgebra_basis(n: u32) -> Vec<Vec<u32>> {
    assert!(n == 1 || n == 2);
    let gens: Vec<u32> = (0..=n).map(|k| 1 << k).collect();
    let window: u32 = if n == 1 { 6 } else { 23 };
    let mut basis: Vec<(Vec<u32>, ClassicalElement, u32)> =
        vec![(vec![], ClassicalElement::from([vec![]]), 0)];
    let mut ech: Echelon<Vec<u32>> = Echelon::new();
    ech.insert(BTreeSet::from([vec![]]));
    for s in 1..=window {
        let mut candidates = Vec::new();
        for (word, elem, deg) in &basis {
            for &g in &gens {
                if deg + g != s {
                    continue;
                }
                let mut next = ClassicalElement::new();
                for key in elem {
                    for term in mul_sq_key(g, key) {
                        toggle(&mut next, term);
                    }
                }
                if next.is_empty() {
                    continue;
                }
                let mut w = vec![g];
                w.extend_from_slice(word);
                candidates.push((w, next, s));
            }
        }
        candidates.sort();
        for (word, elem, deg) in candidates {
            if ech.insert(elem.clone()) {
                basis.push((word, elem, deg));
            }
        }
    }
    basis.into_iter().map(|(w, _, _)| w).collect()
}

/// Certify that `module` is free over classical `A(n)` and return the rank
/// with chosen `A(n)`-generators: dimension must be `dim A(n) · r`, and the
/// images of the `A(n)`-basis on `r` greedily-chosen low-degree generators
/// must span.
pub fn classical_freeness(module: &ClassicalModule, n: u32) -> Result<Vec<usize>, String> {
    let basis = classical_subalgebra_basis(n);
    let an_dim = basis.len();
    if module.dim() % an_dim != 0 {
        return Err(format!("dimension {} not a multiple of dim A({n}) = {an_dim}", module.dim()));
    }
    let mut order: Vec<usize> = (0..module.dim()).collect();
    order.sort_by_key(|&i| module.degrees[i]);
    let mut ech: Echelon<usize> = Echelon::new();
    let mut generators = Vec::new();
    for &i in &order {
        if ech.contains(FVec::from([i])) {
            continue;
        }
        generators.push(i);
        for word in &basis {
            let mut v = FVec::from([i]);
            for &g in word.iter().rev() {
                v = module.act_sq(g, &v);
            }
            ech.insert(v);
        }
    }
    if ech.rank() == module.dim() && generators.len() * an_dim == module.dim() {
        Ok(generators)
    } else {
        Err(format!(
            "span rank {} of {} from {} generators: not free",
            ech.rank(),
            module.dim(),
            generators.len()
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_adem_examples() {
        // Sq¹Sq¹ = 0, Sq¹Sq² = Sq³, Sq²Sq² = Sq³Sq¹, Sq³Sq² = 0,
        // Sq²Sq³ = Sq⁵ + Sq⁴Sq¹.
        assert!(classical_reduce(&[1, 1]).is_empty());
        assert_eq!(classical_reduce(&[1, 2]), ClassicalElement::from([vec![3]]));
        assert_eq!(classical_reduce(&[2, 2]), ClassicalElement::from([vec![3, 1]]));
        assert!(classical_reduce(&[3, 2]).is_empty());
        assert_eq!(classical_reduce(&[2, 3]), ClassicalElement::from([vec![5], vec![4, 1]]));
    }

    #[test]
    fn a1_and_a2_dimensions() {
        assert_eq!(classical_subalgebra_basis(1).len(), 8);
        assert_eq!(classical_subalgebra_basis(2).len(), 64);
    }

    #[test]
    fn a1_regular_module_is_free() {
        // A(1) acting on itself: basis = the 8 words, Sq^g = left product.
        let words = classical_subalgebra_basis(1);
        let elems: Vec<ClassicalElement> =
            words.iter().map(|w| classical_reduce(w)).collect();
        let degs: Vec<i32> = words.iter().map(|w| w.iter().sum::<u32>() as i32).collect();
        let mut ech: Echelon<Vec<u32>> = Echelon::new();
        for e in &elems {
            assert!(ech.insert(e.clone()));
        }
        // Marker-augmented echelon: coordinates (0, key) are real, (1, [i])
        // tags basis element i; reducing a real vector to markers-only reads
        // off its combination.
        let mut aug: Echelon<(u8, Vec<u32>)> = Echelon::new();
        for (i, e) in elems.iter().enumerate() {
            let mut v: BTreeSet<(u8, Vec<u32>)> =
                e.iter().map(|k| (0, k.clone())).collect();
            v.insert((1, vec![i as u32]));
            aug.insert(v);
        }
        let coords = |x: &ClassicalElement| -> FVec {
            let v: BTreeSet<(u8, Vec<u32>)> = x.iter().map(|k| (0, k.clone())).collect();
            let r = aug.reduce(v);
            assert!(r.iter().all(|(t, _)| *t == 1), "not in span of A(1) basis");
            r.into_iter().map(|(_, i)| i[0] as usize).collect()
        };
        let mut tables = BTreeMap::new();
        for g in [1u32, 2] {
            let rows: Vec<FVec> = words
                .iter()
                .map(|w| {
                    let mut prod = vec![g];
                    prod.extend_from_slice(w);
                    coords(&classical_reduce(&prod))
                })
                .collect();
            tables.insert(g, rows);
        }
        let module = ClassicalModule {
            names: words.iter().map(|w| format!("{w:?}")).collect(),
            degrees: degs,
            tables,
        };
        module.validate().expect("regular module satisfies Adem");
        let gens = classical_freeness(&module, 1).expect("free of rank 1");
        assert_eq!(gens.len(), 1);
    }
}
