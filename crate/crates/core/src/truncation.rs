//! Dimension of a presented algebra by truncated ideal spanning: all paths of
//! length below `N` span a vector space, every product `u r v` of a relation
//! with paths is written down with terms of length `>= N` dropped, and the
//! quotient is measured by sparse elimination. This equals the dimension of
//! `KQ / (I + J^N)`, so it agrees with the rewriting construction exactly when
//! `J^N ⊆ I`. It is an independent check on [`crate::algebra::build_algebra`].

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::presentation::Presentation;
use crate::quiver::Path;

/// Largest number of paths the oracle will enumerate.
pub const PATH_BUDGET: usize = 40_000;

fn paths_below(p: &Presentation, n: usize) -> Result<Vec<Path>> {
    let q = &p.quiver;
    let mut layer: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    let mut all = layer.clone();
    for _ in 1..n {
        let mut next = Vec::new();
        for w in &layer {
            for (i, a) in q.arrows().iter().enumerate() {
                if a.source == w.end {
                    let mut arrows = w.arrows.clone();
                    arrows.push(i);
                    next.push(Path {
                        start: w.start,
                        end: a.target,
                        arrows,
                    });
                }
            }
        }
        all.extend(next.iter().cloned());
        if all.len() > PATH_BUDGET {
            return Err(Error::Truncation(format!(
                "more than {PATH_BUDGET} paths below length {n}"
            )));
        }
        layer = next;
    }
    all.sort();
    Ok(all)
}

/// Dimension of `KQ / (I + J^n)` and the surviving (non-pivot) paths.
pub fn truncated_quotient(p: &Presentation, n: usize) -> Result<(usize, Vec<Path>)> {
    let f = &p.field;
    let paths = paths_below(p, n)?;
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut by_end: HashMap<usize, Vec<&Path>> = HashMap::new();
    let mut by_start: HashMap<usize, Vec<&Path>> = HashMap::new();
    for w in &paths {
        by_end.entry(w.end).or_default().push(w);
        by_start.entry(w.start).or_default().push(w);
    }
    let mut pivots: HashMap<usize, BTreeMap<usize, Scalar>> = HashMap::new();
    for rel in &p.relations {
        let (s, e) = rel.endpoints().expect("validated relation");
        let min_len = rel.terms().map(|(w, _)| w.len()).min().unwrap_or(0);
        for u in by_end.get(&s).into_iter().flatten() {
            for v in by_start.get(&e).into_iter().flatten() {
                if u.len() + v.len() + min_len >= n {
                    continue;
                }
                let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (w, c) in rel.terms() {
                    if u.len() + w.len() + v.len() >= n {
                        continue;
                    }
                    let full = u.concat(w).and_then(|x| x.concat(v)).expect("composable");
                    row.insert(index[&full], c.clone());
                }
                insert_row(f, &mut pivots, row);
            }
        }
    }
    let survivors: Vec<Path> = paths
        .iter()
        .enumerate()
        .filter(|(i, _)| !pivots.contains_key(i))
        .map(|(_, w)| w.clone())
        .collect();
    Ok((survivors.len(), survivors))
}

fn insert_row(f: &Field, pivots: &mut HashMap<usize, BTreeMap<usize, Scalar>>, mut row: BTreeMap<usize, Scalar>) {
    while let Some((&lead, c)) = row.iter().next_back() {
        let c = c.clone();
        match pivots.get(&lead) {
            Some(prow) => {
                for (k, x) in prow {
                    let v = f.sub(row.get(k).unwrap_or(&f.zero()), &f.mul(&c, x));
                    if f.is_zero(&v) {
                        row.remove(k);
                    } else {
                        row.insert(*k, v);
                    }
                }
            }
            None => {
                let inv = f.inv(&c).expect("nonzero lead");
                let normalized = row.into_iter().map(|(k, x)| (k, f.mul(&inv, &x))).collect();
                pivots.insert(lead, normalized);
                return;
            }
        }
    }
}

/// Dimensions at truncation lengths `n` and `n + 1`; the truncation is sound
/// when they agree.
pub fn stabilization(p: &Presentation, n: usize) -> Result<(usize, usize)> {
    Ok((truncated_quotient(p, n)?.0, truncated_quotient(p, n + 1)?.0))
}

/// Escalates from the presentation's hint (doubling) until the dimension at
/// `N` and `N + 1` agree, up to `ceiling`.
pub fn stable_truncation(p: &Presentation, ceiling: usize) -> Result<(usize, usize)> {
    let mut n = p.truncation_hint.unwrap_or(2).max(1);
    loop {
        let (a, b) = stabilization(p, n)?;
        if a == b {
            return Ok((n, a));
        }
        if n >= ceiling {
            return Err(Error::Truncation(format!(
                "dimension did not stabilize up to length {ceiling}"
            )));
        }
        n = (2 * n).min(ceiling);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::presentation::parse_presentation;

    #[test]
    fn agrees_with_rewriting_on_small_algebras() {
        for text in [
            "field char=2\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation X^2\nrelation Y^2\ncommutative\n",
            "field char=0\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation XY\nrelation X^3 - Y^2\ncommutative\n",
            "field char=3\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation X^2\nrelation Y^2\nrelation XYX - YXY\n",
        ] {
            let p = parse_presentation(text, None).unwrap();
            let a = build_algebra(&p).unwrap();
            let (n, dim) = stable_truncation(&p, 64).unwrap();
            assert_eq!(dim, a.dim(), "{text}");
            assert!(n >= a.loewy_length() || dim == a.dim());
        }
    }

    #[test]
    fn short_truncation_undercounts_nothing_it_should_keep() {
        let p = parse_presentation(
            "field char=2\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation X^2\nrelation Y^2\ncommutative\n",
            None,
        )
        .unwrap();
        // Paths of length >= 2 are killed at N = 2, so only e, X, Y survive.
        assert_eq!(truncated_quotient(&p, 2).unwrap().0, 3);
    }
}
