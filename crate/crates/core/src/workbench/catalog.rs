//! Built-in example algebras, generated from their defining rules.

use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::axioms::ad_map;
use crate::error::Result;
use crate::linalg::{LinearForm, LinearMap, Vector};
use crate::scalar::{frac, int, Scalar};
use crate::tensor::{StructureTensor, Symmetry};

/// Whether a catalog map is expected to be Rota-Baxter or a derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    RotaBaxter,
    Derivation,
}

/// A map shipped in the catalog together with the identity it satisfies.
#[derive(Debug, Clone)]
pub struct KnownOperator {
    pub algebra: &'static str,
    pub product: &'static str,
    pub map: &'static str,
    pub kind: OperatorKind,
    pub weight: Scalar,
}

pub const NAMES: [&str; 13] = [
    "a4",
    "heisenberg",
    "heisenberg_line",
    "nonabelian2",
    "cross3",
    "componentwise3",
    "componentwise4",
    "mat2",
    "trunc_poly3",
    "trunc_poly4",
    "trunc_poly2_deg3",
    "trunc_poly3_deg4",
    "prelie_poly4",
];

pub fn catalog() -> Vec<Algebra> {
    NAMES.iter().map(|n| by_name(n).expect("catalog entry")).collect()
}

pub fn by_name(name: &str) -> Option<Algebra> {
    let alg = match name {
        "a4" => a4(),
        "heisenberg" => heisenberg(),
        "heisenberg_line" => heisenberg_line(),
        "nonabelian2" => nonabelian2(),
        "cross3" => cross3(),
        "componentwise3" => componentwise(3),
        "componentwise4" => componentwise(4),
        "mat2" => mat2(),
        "trunc_poly3" => truncated_poly(3),
        "trunc_poly4" => truncated_poly(4),
        "trunc_poly2_deg3" => truncated_multi(2, 3),
        "trunc_poly3_deg4" => truncated_multi(3, 4),
        "prelie_poly4" => prelie_poly(4),
        _ => return None,
    };
    Some(alg.expect("catalog generators are well formed"))
}

pub fn known_operators() -> Vec<KnownOperator> {
    use OperatorKind::*;
    let op = |algebra, product, map, kind, weight| KnownOperator {
        algebra,
        product,
        map,
        kind,
        weight,
    };
    vec![
        op("a4", "bracket", "D", RotaBaxter, int(0)),
        op("a4", "bracket", "D", Derivation, int(0)),
        op("heisenberg", "bracket", "P", RotaBaxter, int(0)),
        op("heisenberg_line", "bracket", "P", RotaBaxter, int(0)),
        op("heisenberg_line", "bracket", "R", RotaBaxter, int(0)),
        op("heisenberg_line", "bracket", "Pi", RotaBaxter, int(-1)),
        op("nonabelian2", "bracket", "P", RotaBaxter, int(0)),
        op("nonabelian2", "bracket", "Q", RotaBaxter, int(0)),
        op("componentwise3", "mul", "P", RotaBaxter, int(1)),
        op("componentwise4", "mul", "P", RotaBaxter, int(1)),
        op("mat2", "mul", "Pi", RotaBaxter, int(-1)),
        op("trunc_poly3", "mul", "D", Derivation, int(0)),
        op("trunc_poly3", "mul", "Pi0", RotaBaxter, int(-1)),
        op("trunc_poly3", "mul", "Pi1", RotaBaxter, int(-1)),
        op("trunc_poly4", "mul", "D", Derivation, int(0)),
        op("trunc_poly4", "mul", "Pi0", RotaBaxter, int(-1)),
        op("trunc_poly4", "mul", "Pi1", RotaBaxter, int(-1)),
        op("trunc_poly2_deg3", "mul", "D1", Derivation, int(0)),
        op("trunc_poly2_deg3", "mul", "D2", Derivation, int(0)),
        op("trunc_poly2_deg3", "mul", "Pi0", RotaBaxter, int(-1)),
        op("trunc_poly3_deg4", "mul", "D1", Derivation, int(0)),
        op("trunc_poly3_deg4", "mul", "D2", Derivation, int(0)),
        op("trunc_poly3_deg4", "mul", "D3", Derivation, int(0)),
        op("prelie_poly4", "mul", "P", RotaBaxter, int(0)),
    ]
}

fn a4() -> Result<Algebra> {
    let mut alg = Algebra::with_numbered_basis("a4", "x", 4);
    let mut t = StructureTensor::new(3, 4, Symmetry::Skew)?;
    // [x1,x2,x3]=x4, [x1,x2,x4]=x3, [x1,x3,x4]=x2, [x2,x3,x4]=x1
    for (tuple, image) in [([0, 1, 2], 3), ([0, 1, 3], 2), ([0, 2, 3], 1), ([1, 2, 3], 0)] {
        t.insert(tuple.to_vec(), Vector::basis(4, image))?;
    }
    let e = |i| Vector::basis(4, i);
    let d = ad_map(&t, &[e(0), e(1)])?.add(&ad_map(&t, &[e(2), e(3)])?);
    alg.add_product("bracket", t)?;
    alg.add_claim("bracket", "3lie")?;
    alg.add_map("D", d)?;
    Ok(alg)
}

fn lie_from(name: &str, dim: usize, brackets: &[((usize, usize), Vec<i64>)]) -> Result<Algebra> {
    let mut alg = Algebra::with_numbered_basis(name, "e", dim);
    let mut t = StructureTensor::new(2, dim, Symmetry::Skew)?;
    for ((i, j), v) in brackets {
        t.insert(vec![*i, *j], Vector::from_ints(v))?;
    }
    alg.add_product("bracket", t)?;
    alg.add_claim("bracket", "lie")?;
    Ok(alg)
}

fn heisenberg() -> Result<Algebra> {
    let mut alg = lie_from("heisenberg", 3, &[((0, 1), vec![0, 0, 1])])?;
    alg.add_map("P", LinearMap::from_int_rows(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]])?)?;
    Ok(alg)
}

fn heisenberg_line() -> Result<Algebra> {
    let mut alg = lie_from("heisenberg_line", 4, &[((0, 1), vec![0, 0, 1, 0])])?;
    alg.add_map(
        "P",
        LinearMap::from_int_rows(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0]])?,
    )?;
    // inverse of the derivation diag(1, 1, 2, 1)
    alg.add_map("R", LinearMap::diagonal(vec![int(1), int(1), frac(1, 2), int(1)]))?;
    // projection onto span(e1, e3) along span(e2, e4)
    alg.add_map("Pi", LinearMap::diagonal(vec![int(1), int(0), int(1), int(0)]))?;
    alg.add_form("f", LinearForm::coordinate(4, 3))?;
    Ok(alg)
}

fn nonabelian2() -> Result<Algebra> {
    let mut alg = lie_from("nonabelian2", 2, &[((0, 1), vec![0, 1])])?;
    // columns are images: P(e1) = -e1 + e2, P(e2) = -e1 + e2
    alg.add_map("P", LinearMap::from_int_rows(&[&[-1, -1], &[1, 1]])?)?;
    alg.add_map("Q", LinearMap::from_int_rows(&[&[1, 0], &[0, 0]])?)?;
    Ok(alg)
}

fn cross3() -> Result<Algebra> {
    lie_from(
        "cross3",
        3,
        &[((0, 1), vec![0, 0, 1]), ((1, 2), vec![1, 0, 0]), ((0, 2), vec![0, -1, 0])],
    )
}

fn componentwise(n: usize) -> Result<Algebra> {
    let mut alg = Algebra::with_numbered_basis(format!("componentwise{n}"), "e", n);
    let t = StructureTensor::from_fn(2, n, Symmetry::Symmetric, |x| {
        if x[0] == x[1] {
            Vector::basis(n, x[0])
        } else {
            Vector::zero(n)
        }
    })?;
    alg.add_product("mul", t)?;
    alg.add_claim("mul", "assoc")?;
    alg.add_claim("mul", "comm")?;
    // (P a)_i = sum of a_j for j < i
    let rows = (0..n)
        .map(|i| (0..n).map(|j| int((j < i) as i64)).collect())
        .collect();
    alg.add_map("P", LinearMap::from_rows(rows)?)?;
    Ok(alg)
}

fn mat2() -> Result<Algebra> {
    let names = ["E11", "E12", "E21", "E22"];
    let mut alg = Algebra::new("mat2", names.iter().map(|s| s.to_string()).collect());
    // E_ab E_cd = [b == c] E_ad, index 2a + b
    let t = StructureTensor::from_fn(2, 4, Symmetry::None, |x| {
        let (a, b, c, d) = (x[0] / 2, x[0] % 2, x[1] / 2, x[1] % 2);
        if b == c {
            Vector::basis(4, 2 * a + d)
        } else {
            Vector::zero(4)
        }
    })?;
    alg.add_product("mul", t)?;
    alg.add_claim("mul", "assoc")?;
    // projection onto upper triangular along strictly lower triangular
    alg.add_map("Pi", LinearMap::diagonal(vec![int(1), int(1), int(0), int(1)]))?;
    Ok(alg)
}

/// Monomials in `vars` variables of total degree below `bound`, ordered by
/// degree and then by descending exponent vector.
pub fn monomials(vars: usize, bound: usize) -> Vec<Vec<usize>> {
    fn fill(prefix: &mut Vec<usize>, left: usize, vars: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() + 1 == vars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            fill(prefix, left - k, vars, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for deg in 0..bound {
        fill(&mut Vec::new(), deg, vars, &mut out);
    }
    out
}

fn monomial_name(exps: &[usize], var: impl Fn(usize) -> String) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { var(i) } else { format!("{}^{k}", var(i)) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `ℚ[t1..tk]` modulo monomials of degree `≥ bound`, with the partial Euler
/// derivations `ti ∂/∂ti`, the constant-coefficient form and the projection
/// onto constants.
fn truncated(name: String, vars: usize, bound: usize, var: impl Fn(usize) -> String) -> Result<Algebra> {
    let mons = monomials(vars, bound);
    let index: BTreeMap<Vec<usize>, usize> = mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = mons.len();
    let mut alg = Algebra::new(name, mons.iter().map(|m| monomial_name(m, &var)).collect());
    let t = StructureTensor::from_fn(2, dim, Symmetry::Symmetric, |x| {
        let prod: Vec<usize> = mons[x[0]].iter().zip(&mons[x[1]]).map(|(a, b)| a + b).collect();
        index.get(&prod).map_or_else(|| Vector::zero(dim), |&k| Vector::basis(dim, k))
    })?;
    alg.add_product("mul", t)?;
    alg.add_claim("mul", "assoc")?;
    alg.add_claim("mul", "comm")?;
    let partial = |v: usize| LinearMap::diagonal(mons.iter().map(|m| int(m[v] as i64)).collect());
    if vars == 1 {
        alg.add_map("D", partial(0))?;
        alg.add_map(
            "Pi1",
            LinearMap::diagonal((0..dim).map(|i| int((i > 0) as i64)).collect()),
        )?;
    } else {
        for v in 0..vars {
            alg.add_map(format!("D{}", v + 1), partial(v))?;
        }
    }
    alg.add_map("Pi0", LinearMap::diagonal((0..dim).map(|i| int((i == 0) as i64)).collect()))?;
    alg.add_form("f", LinearForm::coordinate(dim, 0))?;
    Ok(alg)
}

fn truncated_poly(n: usize) -> Result<Algebra> {
    truncated(format!("trunc_poly{n}"), 1, n, |_| "t".into())
}

fn truncated_multi(vars: usize, bound: usize) -> Result<Algebra> {
    truncated(format!("trunc_poly{vars}_deg{bound}"), vars, bound, |i| format!("t{}", i + 1))
}

/// `ℚ[t]/(t^n)` with the pre-Lie product `x*y = x t y'(t)`, the weight-zero
/// Rota-Baxter operator `x ↦ x(0) t^(n-1)` and the constant-coefficient form.
fn prelie_poly(n: usize) -> Result<Algebra> {
    let mut alg = Algebra::new(
        format!("prelie_poly{n}"),
        monomials(1, n).iter().map(|m| monomial_name(m, |_| "t".into())).collect(),
    );
    let t = StructureTensor::from_fn(2, n, Symmetry::None, |x| {
        let k = x[0] + x[1];
        if k < n {
            Vector::basis(n, k).scale(&int(x[1] as i64))
        } else {
            Vector::zero(n)
        }
    })?;
    alg.add_product("mul", t)?;
    alg.add_claim("mul", "prelie")?;
    let mut rows = vec![vec![int(0); n]; n];
    rows[n - 1][0] = int(1);
    alg.add_map("P", LinearMap::from_rows(rows)?)?;
    alg.add_form("f", LinearForm::coordinate(n, 0))?;
    Ok(alg)
}
