//! Independent reference computations for cone tests. Nothing here calls the
//! double description code under test.

#![allow(dead_code)]

use movcone_core::{Rational, RationalVector};
use num_traits::{One, Signed, Zero};

type Row = (Vec<Rational>, Rational);

fn normalize((coeffs, c): Row) -> Row {
    let scale =
        coeffs
            .iter()
            .chain(std::iter::once(&c))
            .map(|x| x.abs())
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    if scale.is_zero() {
        return (coeffs, c);
    }
    (coeffs.iter().map(|x| x / &scale).collect(), c / scale)
}

/// Fourier–Motzkin decision of `v ∈ cone(gens)`: is there `λ ≥ 0` with
/// `Σ λ_j g_j = v`? Equalities are eliminated by substitution, the remaining
/// variables by pairing positive and negative rows.
pub fn fm_contains(gens: &[RationalVector], v: &RationalVector) -> bool {
    let m = gens.len();
    let d = v.dim();
    let mut eqs: Vec<Row> = (0..d).map(|i| (gens.iter().map(|g| g[i].clone()).collect(), -v[i].clone())).collect();
    let mut ineqs: Vec<Row> = (0..m)
        .map(|j| {
            let mut c = vec![Rational::zero(); m];
            c[j] = Rational::one();
            (c, Rational::zero())
        })
        .collect();

    let mut live: Vec<usize> = (0..m).collect();
    while let Some(&var) = live.first() {
        // Prefer a variable that some equality can solve for.
        let solvable = live.iter().find_map(|&j| eqs.iter().position(|(c, _)| !c[j].is_zero()).map(|r| (j, r)));
        if let Some((j, r)) = solvable {
            let (pc, pk) = eqs.swap_remove(r);
            let substitute = |(mut c, mut k): Row| -> Row {
                let f = &c[j] / &pc[j];
                if !f.is_zero() {
                    for (x, p) in c.iter_mut().zip(&pc) {
                        *x -= &f * p;
                    }
                    k -= &f * &pk;
                }
                (c, k)
            };
            eqs = eqs.into_iter().map(substitute).collect();
            ineqs = ineqs.into_iter().map(substitute).map(normalize).collect();
            live.retain(|&x| x != j);
            continue;
        }
        // Cheapest variable to eliminate.
        let j = *live
            .iter()
            .min_by_key(|&&j| {
                let p = ineqs.iter().filter(|(c, _)| c[j].is_positive()).count();
                let n = ineqs.iter().filter(|(c, _)| c[j].is_negative()).count();
                p * n
            })
            .unwrap_or(&var);
        let (pos, rest): (Vec<Row>, Vec<Row>) = ineqs.into_iter().partition(|(c, _)| c[j].is_positive());
        let (neg, zero): (Vec<Row>, Vec<Row>) = rest.into_iter().partition(|(c, _)| c[j].is_negative());
        let mut next = zero;
        for (pc, pk) in &pos {
            for (nc, nk) in &neg {
                let a = -&nc[j];
                let b = pc[j].clone();
                let c: Vec<Rational> = pc.iter().zip(nc).map(|(x, y)| &a * x + &b * y).collect();
                let k = &a * pk + &b * nk;
                next.push(normalize((c, k)));
            }
        }
        next.sort();
        next.dedup();
        ineqs = next;
        live.retain(|&x| x != j);
    }
    eqs.iter().all(|(_, k)| k.is_zero()) && ineqs.iter().all(|(_, k)| !k.is_negative())
}

fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut result = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            result = -result;
        }
        let pivot = a[col][col].clone();
        result *= &pivot;
        let pivot_row = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            let f = &row[col] / &pivot;
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &f * y;
            }
        }
    }
    result
}

/// Generalized cross product of `d-1` vectors in dimension `d` (cofactor
/// expansion); orthogonal to all of them, zero iff they are dependent.
pub fn cross(vectors: &[&RationalVector]) -> RationalVector {
    let d = vectors.len() + 1;
    let coords = (0..d)
        .map(|i| {
            let minor: Vec<Vec<Rational>> =
                vectors.iter().map(|v| (0..d).filter(|&k| k != i).map(|k| v[k].clone()).collect()).collect();
            let m = if minor.is_empty() { Rational::one() } else { det(minor) };
            if i % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect();
    RationalVector::new(coords)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Facet normals of a full-dimensional cone by exhaustive search: every
/// hyperplane through `d-1` generators that leaves all generators on one
/// side is a supporting hyperplane, and the facet ones are those through
/// `d-1` independent generators. Returns sorted primitive normals.
pub fn brute_force_facets(dim: usize, gens: &[RationalVector]) -> Vec<RationalVector> {
    let mut out = Vec::new();
    for subset in subsets(gens.len(), dim - 1) {
        let picked: Vec<&RationalVector> = subset.iter().map(|&i| &gens[i]).collect();
        let n = cross(&picked);
        if n.is_zero() {
            continue;
        }
        let values: Vec<Rational> = gens.iter().map(|g| g.dot(&n)).collect();
        if values.iter().all(|x| !x.is_negative()) {
            out.push(n.primitive());
        } else if values.iter().all(|x| !x.is_positive()) {
            out.push((-n).primitive());
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Extreme rays of `{x : x·n ≥ 0}` for a full-dimensional pointed cone, by the
/// same exhaustive search on the normals.
pub fn brute_force_rays(dim: usize, normals: &[RationalVector]) -> Vec<RationalVector> {
    brute_force_facets(dim, normals)
}
