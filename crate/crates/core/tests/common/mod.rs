//! Brute-force oracles written against the raw definitions, sharing no code
//! with the library beyond the Cayley table.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use qshadow::quandle::FiniteRack;

/// PD code of the closure of a braid word on `strands` strands; generator
/// `k` crosses strands `k` and `k+1`, positive for `k > 0`.
pub fn braid_closure_pd(strands: usize, word: &[i32]) -> String {
    let mut next = 0usize;
    let mut fresh = || {
        next += 1;
        next
    };
    let bottom: Vec<usize> = (0..strands).map(|_| fresh()).collect();
    let mut current = bottom.clone();
    let mut quads = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (a, b) = (current[i], current[i + 1]);
        let (nw, ne) = (fresh(), fresh());
        quads.push(if g > 0 {
            [b, ne, nw, a]
        } else {
            [a, b, ne, nw]
        });
        current[i] = nw;
        current[i + 1] = ne;
    }
    let close: HashMap<usize, usize> = current.into_iter().zip(bottom).collect();
    for q in quads.iter_mut() {
        for e in q.iter_mut() {
            *e = *close.get(e).unwrap_or(e);
        }
    }
    let mut used: Vec<usize> = quads.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let body: Vec<String> = quads
        .iter()
        .map(|q| {
            let r: Vec<String> = q
                .iter()
                .map(|e| (used.binary_search(e).unwrap() + 1).to_string())
                .collect();
            format!("X[{}]", r.join(","))
        })
        .collect();
    format!("PD[{}]", body.join(","))
}

/// Crossing quadruples of a `PD[X[..],..]` string.
pub fn pd_quads(pd: &str) -> Vec<[usize; 4]> {
    pd.split("X[")
        .skip(1)
        .map(|chunk| {
            let inner = &chunk[..chunk.find(']').unwrap()];
            let v: Vec<usize> = inner
                .split(',')
                .map(|t| t.trim().parse().unwrap())
                .collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Per crossing: (under-in arc, over arc, under-out arc, positive?), plus
/// the number of arcs. Arcs are classes of edges joined through over slots.
pub fn crossing_relations(quads: &[[usize; 4]]) -> (Vec<(usize, usize, usize, bool)>, usize) {
    let edges = 2 * quads.len();
    let mut parent: Vec<usize> = (0..edges).collect();
    for q in quads {
        let (a, b) = (find(&mut parent, q[1] - 1), find(&mut parent, q[3] - 1));
        parent[a] = b;
    }
    let mut arc_of = HashMap::new();
    let arc: Vec<usize> = (0..edges)
        .map(|e| {
            let r = find(&mut parent, e);
            let n = arc_of.len();
            *arc_of.entry(r).or_insert(n)
        })
        .collect();
    // head[e] = Some((crossing, slot)) where the edge ends
    let mut head: Vec<Option<(usize, usize)>> = vec![None; edges];
    let mut places: Vec<Vec<(usize, usize)>> = vec![Vec::new(); edges];
    for (c, q) in quads.iter().enumerate() {
        for (s, &e) in q.iter().enumerate() {
            places[e - 1].push((c, s));
        }
    }
    for (e, p) in places.iter().enumerate() {
        for &(c, s) in p {
            if s == 0 {
                head[e] = Some((c, s));
            }
            if s == 2 {
                head[e] = p.iter().copied().find(|&x| x != (c, s));
            }
        }
    }
    loop {
        propagate(quads, &places, &mut head);
        // a component that is never under is a closed arc; orient it so labels
        // increase along it, which is the usual reading of a PD code
        let Some((c, q)) = quads
            .iter()
            .enumerate()
            .find(|(_, q)| head[q[1] - 1].is_none() && q[1] != q[3])
        else {
            break;
        };
        let mut labels: Vec<usize> = (1..=edges)
            .filter(|&e| arc[e - 1] == arc[q[1] - 1])
            .collect();
        labels.sort_unstable();
        let succ =
            |e: usize| labels[(labels.iter().position(|&l| l == e).unwrap() + 1) % labels.len()];
        if succ(q[1]) == q[3] {
            head[q[1] - 1] = Some((c, 1));
        } else {
            head[q[3] - 1] = Some((c, 3));
        }
    }
    let rel = quads
        .iter()
        .enumerate()
        .map(|(c, q)| {
            let h = head[q[3] - 1].expect("orientation of an over-only component");
            (arc[q[0] - 1], arc[q[1] - 1], arc[q[2] - 1], h == (c, 3))
        })
        .collect();
    (rel, arc_of.len())
}

fn propagate(
    quads: &[[usize; 4]],
    places: &[Vec<(usize, usize)>],
    head: &mut [Option<(usize, usize)>],
) {
    loop {
        let mut changed = false;
        for (c, q) in quads.iter().enumerate() {
            let (e1, e3) = (q[1] - 1, q[3] - 1);
            for (here, there, hs, ts) in [(e1, e3, 1, 3), (e3, e1, 3, 1)] {
                if head[there].is_some() {
                    continue;
                }
                if let Some(h) = head[here] {
                    let into_here = h == (c, hs);
                    head[there] = if into_here {
                        places[there].iter().copied().find(|&x| x != (c, ts))
                    } else {
                        Some((c, ts))
                    };
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Counts colorings by trying all `|X|^arcs` assignments.
pub fn brute_colorings(pd: &str, x: &FiniteRack) -> u64 {
    let quads = pd_quads(pd);
    if quads.is_empty() {
        return x.size() as u64;
    }
    let (rel, arcs) = crossing_relations(&quads);
    let n = x.size();
    let total = n.pow(arcs as u32);
    let mut count = 0;
    let mut col = vec![0; arcs];
    for code in 0..total {
        let mut k = code;
        for c in col.iter_mut() {
            *c = k % n;
            k /= n;
        }
        let ok = rel.iter().all(|&(i, o, t, pos)| {
            if pos {
                x.op(col[i], col[o]) == col[t]
            } else {
                x.op(col[t], col[o]) == col[i]
            }
        });
        count += ok as u64;
    }
    count
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |a| {
                    let mut s = t.clone();
                    s.push(a);
                    s
                })
            })
            .collect();
    }
    out
}

fn degenerate(t: &[usize]) -> bool {
    t.windows(2).any(|w| w[0] == w[1])
}

/// Dense boundary matrix `C_k -> C_{k-1}` (rows index `C_{k-1}`) written
/// straight from the definition; `quandle` passes to the quotient by the
/// degenerate tuples.
pub fn oracle_boundary(x: &FiniteRack, k: usize, quandle: bool) -> Vec<Vec<i64>> {
    let keep = |t: &Vec<usize>| !(quandle && degenerate(t));
    let cols: Vec<Vec<usize>> = tuples(x.size(), k).into_iter().filter(keep).collect();
    let rows: Vec<Vec<usize>> = tuples(x.size(), k.saturating_sub(1))
        .into_iter()
        .filter(keep)
        .collect();
    let index: HashMap<&Vec<usize>, usize> = rows.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, t) in cols.iter().enumerate() {
        for i in 1..t.len() {
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            let mut drop: Vec<usize> = t.clone();
            drop.remove(i);
            let mut act: Vec<usize> = t.iter().take(i).map(|&a| x.op(a, t[i])).collect();
            act.extend_from_slice(&t[i + 1..]);
            for (face, s) in [(drop, sign), (act, -sign)] {
                if let Some(&r) = index.get(&face) {
                    m[r][j] += s;
                }
            }
        }
    }
    m
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank_q(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].abs();
        rank += 1;
    }
    rank
}

/// Rank over `F_p`.
pub fn rank_mod_p(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|v| v.rem_euclid(p)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let inv = |v: i64| (1..p).find(|&w| v * w % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let s = inv(a[rank][c]);
        for v in a[rank].iter_mut().skip(c) {
            *v = *v * s % p;
        }
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot).skip(c) {
                    *v = (*v - f * pv).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `(dim C_k, rank d_k, rank d_{k+1})` over `Q`, or over `F_p` when given.
pub fn ranks(x: &FiniteRack, k: usize, quandle: bool, p: Option<i64>) -> (usize, usize, usize) {
    let rank = |m: &[Vec<i64>]| match p {
        None => rank_q(m),
        Some(p) => rank_mod_p(m, p),
    };
    let dk = oracle_boundary(x, k, quandle);
    let dk1 = oracle_boundary(x, k + 1, quandle);
    let dim = dk.first().map_or(dk1.len(), Vec::len);
    let dim = if k == 0 { dk1.len() } else { dim };
    let rk = if k == 0 { 0 } else { rank(&dk) };
    (dim, rk, rank(&dk1))
}

/// Betti number of `H_k` over `Q` or `F_p`.
pub fn betti(x: &FiniteRack, k: usize, quandle: bool, p: Option<i64>) -> usize {
    let (dim, a, b) = ranks(x, k, quandle, p);
    dim - a - b
}
