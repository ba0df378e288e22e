//! Specialization functors to classical Steenrod modules.
//!
//! * **Underlying**: `τ ↦ 1`, `ρ ↦ 0`; degrees collapse to the topological
//!   degree and `Sq^n` passes through.
//! * **Geometric fixed points** `Φ`: `τ ↦ 0`, `ρ ↦ 1`; only even squares
//!   survive, with `Φ(Sq^{2n}) = Sq^n`, and a bigraded generator of degree
//!   `(s, w)` lands in degree `s − w`.

use std::collections::BTreeMap;

use crate::classical::{ClassicalModule, FVec};
use crate::fmodule::{structure_vector, FModule};

fn specialize_row(
    row: &crate::fmodule::ModuleElement,
    keep: impl Fn(u32, u32) -> bool,
) -> FVec {
    let mut v = FVec::new();
    for (i, c) in row.comps() {
        let odd = c.monomials().filter(|&(a, b)| keep(a, b)).count() % 2 == 1;
        if odd && !v.insert(i) {
            v.remove(&i);
        }
    }
    v
}

/// The underlying classical module: `τ ↦ 1`, `ρ ↦ 0`, graded by topological
/// degree.
pub fn underlying(module: &FModule) -> ClassicalModule {
    let names = module.generators.iter().map(|g| g.name.clone()).collect();
    let degrees = module.generators.iter().map(|g| g.deg.s).collect();
    let tables = module
        .tables
        .iter()
        .map(|(&g, table)| {
            (g, table.iter().map(|row| specialize_row(row, |_, b| b == 0)).collect())
        })
        .collect();
    ClassicalModule { names, degrees, tables }
}

/// Geometric fixed points: `τ ↦ 0`, `ρ ↦ 1`, `Sq^{2n} ↦ Sq^n`, degree
/// `s − w`. Only the even action tables transport; `Φ` kills odd squares.
pub fn geometric_fixed_points(module: &FModule) -> ClassicalModule {
    let names = module.generators.iter().map(|g| phi_name(&g.name)).collect();
    let degrees = module.generators.iter().map(|g| g.deg.s - g.deg.w).collect();
    let tables = module
        .tables
        .iter()
        .filter(|(&g, _)| g % 2 == 0)
        .map(|(&g, table)| {
            (g / 2, table.iter().map(|row| specialize_row(row, |a, _| a == 0)).collect())
        })
        .collect();
    ClassicalModule { names, degrees, tables }
}

/// The fixed-point names of the `A^R(1)`-family generators; other names pass
/// through unchanged.
pub fn phi_name(name: &str) -> String {
    match name {
        "x00" => "s0",
        "x10" => "s1b",
        "x21" => "s1a",
        "x31" => "t2",
        "y31" => "s2",
        "y41" => "t3b",
        "y52" => "t3a",
        "y62" => "t4",
        other => other,
    }
    .to_string()
}

/// The classical module `A₁[a, b]`: the eight-generator `A(1)` skeleton with
/// `Sq⁴x00 = a·y41`, `Sq⁴x10 = y52`, `Sq⁴x21 = b·y62`.
pub fn classical_a1_model(a: u8, b: u8) -> ClassicalModule {
    let names: Vec<String> =
        crate::fmodule::A1_GENERATOR_NAMES.iter().map(|s| s.to_string()).collect();
    let degrees = vec![0, 1, 2, 3, 3, 4, 5, 6];
    let idx = |n: &str| names.iter().position(|m| m == n).unwrap();
    let mut tables: BTreeMap<u32, Vec<FVec>> = BTreeMap::new();
    let mut row = |g: u32, src: &str, dst: &str| {
        tables.entry(g).or_insert_with(|| vec![FVec::new(); 8])[idx(src)].insert(idx(dst));
    };
    for (src, dst) in [("x00", "x10"), ("x21", "x31"), ("y31", "y41"), ("y52", "y62")] {
        row(1, src, dst);
    }
    for (src, dst) in [("x00", "x21"), ("x10", "y31"), ("x21", "y41"), ("x31", "y52"), ("y41", "y62")]
    {
        row(2, src, dst);
    }
    if a == 1 {
        row(4, "x00", "y41");
    }
    row(4, "x10", "y52");
    if b == 1 {
        row(4, "x21", "y62");
    }
    tables.entry(4).or_insert_with(|| vec![FVec::new(); 8]);
    tables.insert(8, vec![FVec::new(); 8]);
    ClassicalModule { names, degrees, tables }
}

/// The `A₁`-isomorphism type `(a, b) = (1 + β03 + β14, β26)` of the
/// underlying module of a structure in the `A^R(1)` family (Thm on the
/// underlying spectrum).
pub fn a1_type(module: &FModule) -> Result<(u8, u8), String> {
    let [_, b03, b14, _, _, b26, _] = structure_vector(module)?;
    Ok((1 ^ b03 ^ b14, b26))
}

/// The geometric-fixed-point module predicted for the parameter vector: the
/// eight generators `s0, s1a, s1b, s2, t2, t3a, t3b, t4` with the ten
/// relations of the fixed-points theorem.
pub fn phi_model(v: crate::fmodule::StructureVector) -> ClassicalModule {
    let [a03, b03, b14, b06, b25, b26, g36] = v.map(|x| x & 1);
    let j24 = (b03 & g36) ^ (a03 & (b25 ^ b26));
    let names: Vec<String> = ["s0", "s1b", "s1a", "t2", "s2", "t3b", "t3a", "t4"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let degrees = vec![0, 1, 1, 2, 2, 3, 3, 4];
    let idx = |n: &str| names.iter().position(|m| m == n).unwrap();
    let mut tables: BTreeMap<u32, Vec<FVec>> =
        [1, 2, 4].into_iter().map(|g| (g, vec![FVec::new(); 8])).collect();
    let mut row = |g: u32, src: &str, dst: &str, on: u8| {
        if on == 1 {
            tables.get_mut(&g).unwrap()[idx(src)].insert(idx(dst));
        }
    };
    // Sq¹s0 = s1a, Sq¹s1b = s2, Sq¹t2 = t3a, Sq¹t3b = t4.
    row(1, "s0", "s1a", 1);
    row(1, "s1b", "s2", 1);
    row(1, "t2", "t3a", 1);
    row(1, "t3b", "t4", 1);
    // Sq²s0 = β03s2 + α03t2; Sq²s1a = β25t3a + j24t3b;
    // Sq²s1b = t3a + β14t3b; Sq²s2 = γ36t4; Sq²t2 = (β25+β26)t4.
    row(2, "s0", "s2", b03);
    row(2, "s0", "t2", a03);
    row(2, "s1a", "t3a", b25);
    row(2, "s1a", "t3b", j24);
    row(2, "s1b", "t3a", 1);
    row(2, "s1b", "t3b", b14);
    row(2, "s2", "t4", g36);
    row(2, "t2", "t4", b25 ^ b26);
    // Sq⁴s0 = β06t4.
    row(4, "s0", "t4", b06);
    ClassicalModule { names, degrees, tables }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::classical_freeness;
    use crate::fmodule::{a1_module, StructureVector};

    fn all_vectors() -> impl Iterator<Item = StructureVector> {
        (0u8..128).map(|mask| std::array::from_fn(|k| mask >> k & 1))
    }

    #[test]
    fn underlying_matches_a1_model_for_all_vectors() {
        for v in all_vectors() {
            let m = a1_module(v);
            let u = underlying(&m);
            u.validate().unwrap_or_else(|e| panic!("{v:?}: {e}"));
            let (a, b) = a1_type(&m).unwrap();
            let model = classical_a1_model(a, b);
            assert_eq!(u.names, model.names);
            assert_eq!(u.degrees, model.degrees);
            assert_eq!(u.tables, model.tables, "underlying of {v:?} ≠ A₁[{a},{b}]");
            let gens = classical_freeness(&u, 1).expect("free over classical A(1)");
            assert_eq!(gens.len(), 1);
        }
    }

    #[test]
    fn a1_type_example() {
        assert_eq!(a1_type(&a1_module([0, 0, 0, 1, 0, 1, 0])).unwrap(), (1, 1));
    }

    #[test]
    fn fixed_points_match_model_for_all_vectors() {
        for v in all_vectors() {
            let m = a1_module(v);
            let phi = geometric_fixed_points(&m);
            phi.validate().unwrap_or_else(|e| panic!("{v:?}: {e}"));
            let model = phi_model(v);
            assert_eq!(phi.names, model.names, "{v:?}");
            assert_eq!(phi.degrees, model.degrees, "{v:?}");
            assert_eq!(phi.tables, model.tables, "Φ of {v:?} differs from the relations table");
        }
    }
}
