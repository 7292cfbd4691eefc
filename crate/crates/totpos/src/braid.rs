//! Coordinate changes between reduced-word charts.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::rootdata::{CartanDatum, Word};
use crate::semifield::Semifield;

fn order3<K: Semifield>(x: &[K]) -> Vec<K> {
    let (a, b, c) = (&x[0], &x[1], &x[2]);
    let s = a.add(c);
    vec![b.mul(c).div(&s), s.clone(), a.mul(b).div(&s)]
}

/// The order-4 move from `(i,j,i,j)` when `<i,j*> = -2`.
fn order4_long<K: Semifield>(x: &[K]) -> Vec<K> {
    let (a, b, c, d) = (&x[0], &x[1], &x[2], &x[3]);
    let big_a = a.mul(b).add(&a.mul(d)).add(&c.mul(d));
    let acd = a.mul(c).mul(d);
    let a2 = a.mul(a);
    let big_e = a2
        .mul(b)
        .add(&a2.mul(d))
        .add(&c.mul(c).mul(d))
        .add(&acd.mul(&K::from_count(2)));
    vec![
        b.mul(&c.mul(c)).mul(d).div(&big_e),
        big_e.div(&big_a),
        big_a.mul(&big_a).div(&big_e),
        a.mul(b).mul(c).div(&big_a),
    ]
}

fn order4<K: Semifield>(datum: &CartanDatum, i: usize, j: usize, x: &[K]) -> Vec<K> {
    if datum.pairing(i, j) == -2 {
        order4_long(x)
    } else {
        let rev: Vec<K> = x.iter().rev().cloned().collect();
        let mut out = order4_long(&rev);
        out.reverse();
        out
    }
}

/// Coordinates after replacing the alternating word `(i,j,i,...)` by `(j,i,j,...)`.
pub fn rank2_move<K: Semifield>(datum: &CartanDatum, i: usize, j: usize, x: &[K]) -> Result<Vec<K>> {
    let m = datum.bond_order(i, j);
    if i == j {
        return Err(Error::InvalidWordPair(vec![i], vec![j]));
    }
    if x.len() != m {
        return Err(Error::WrongLength {
            expected: m,
            got: x.len(),
        });
    }
    Ok(match m {
        2 => vec![x[1].clone(), x[0].clone()],
        3 => order3(x),
        4 => order4(datum, i, j, x),
        6 => fold_rank2(datum, i, j, x)?,
        _ => unreachable!(),
    })
}

struct Fold {
    datum: CartanDatum,
    w1: Word,
    w2: Word,
}

fn fold_data(e: usize) -> &'static Fold {
    static A3: OnceLock<Fold> = OnceLock::new();
    static D4: OnceLock<Fold> = OnceLock::new();
    let cell = if e == 2 { &A3 } else { &D4 };
    cell.get_or_init(|| {
        // nodes 0..e are the commuting ones, node e is joined to each of them
        let n = e + 1;
        let mut a = vec![vec![0i64; n]; n];
        for k in 0..n {
            a[k][k] = 2;
        }
        for k in 0..e {
            a[k][e] = -1;
            a[e][k] = -1;
        }
        let datum = CartanDatum::new(if e == 2 { "A3" } else { "D4" }, a).unwrap();
        let block1: Word = (0..=e).collect();
        let block2: Word = std::iter::once(e).chain(0..e).collect();
        let w1: Word = block1.iter().cycle().take(e * n).cloned().collect();
        let w2: Word = block2.iter().cycle().take(e * n).cloned().collect();
        Fold { datum, w1, w2 }
    })
}

/// The order-4 or order-6 move computed inside the simply laced cover.
pub fn fold_rank2<K: Semifield>(datum: &CartanDatum, i: usize, j: usize, x: &[K]) -> Result<Vec<K>> {
    let m = datum.bond_order(i, j);
    if m != 4 && m != 6 {
        return Err(Error::NotFoldable(i, j));
    }
    let e = m / 2;
    if x.len() != m {
        return Err(Error::WrongLength {
            expected: m,
            got: x.len(),
        });
    }
    let fold = fold_data(e);
    let n = e + 1;
    let long_i = datum.pairing(i, j) == -(e as i64);
    let (from, to) = if long_i {
        (&fold.w1, &fold.w2)
    } else {
        (&fold.w2, &fold.w1)
    };
    // 0-based positions in the list that get repeated
    let repeated = if long_i { 0 } else { 1 };
    let mut lifted = Vec::with_capacity(e * n);
    for (k, v) in x.iter().enumerate() {
        let times = if k % 2 == repeated { e } else { 1 };
        lifted.extend(std::iter::repeat(v.clone()).take(times));
    }
    let out = chart_transition(&fold.datum, from, to, &lifted)?;
    let mut picked = Vec::with_capacity(m);
    for k in 0..e {
        if long_i {
            picked.push(out[k * n].clone());
            picked.push(out[k * n + 1].clone());
        } else {
            picked.push(out[k * n].clone());
            picked.push(out[(k + 1) * n - 1].clone());
        }
    }
    Ok(picked)
}

/// Coordinates of the same element in the chart of `to`.
pub fn chart_transition<K: Semifield>(
    datum: &CartanDatum,
    from: &[usize],
    to: &[usize],
    x: &[K],
) -> Result<Vec<K>> {
    if x.len() != from.len() {
        return Err(Error::WrongLength {
            expected: from.len(),
            got: x.len(),
        });
    }
    let path = datum.braid_path(from, to)?;
    let mut coords = x.to_vec();
    for mv in path.iter() {
        let seg = rank2_move(datum, mv.i, mv.j, &coords[mv.pos..mv.pos + mv.m])?;
        coords[mv.pos..mv.pos + mv.m].clone_from_slice(&seg);
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::word1;
    use crate::semifield::{PosRat, Sample, TropInt};
    use rand::SeedableRng;

    fn q(p: i64, r: i64) -> PosRat {
        PosRat::from_ints(p, r)
    }

    fn ints(xs: &[i64]) -> Vec<TropInt> {
        xs.iter().map(|&x| TropInt::new(x)).collect()
    }

    #[test]
    fn order3_examples() {
        let a2 = CartanDatum::parse("A2").unwrap();
        let out = rank2_move(&a2, 0, 1, &[q(1, 1), q(2, 1), q(3, 1)]).unwrap();
        assert_eq!(out, vec![q(3, 2), q(4, 1), q(1, 2)]);
        let out = rank2_move(&a2, 0, 1, &ints(&[1, 0, 2])).unwrap();
        assert_eq!(out, ints(&[1, 1, 0]));
        let a1a1 = CartanDatum::parse("2,0;0,2").unwrap();
        assert_eq!(rank2_move(&a1a1, 0, 1, &[q(1, 2), q(5, 1)]).unwrap(), vec![q(5, 1), q(1, 2)]);
    }

    #[test]
    fn order4_example() {
        // node 2 of B2 is short: <2,1*> = -2
        let b2 = CartanDatum::parse("B2").unwrap();
        let one = vec![PosRat::int(1); 4];
        let out = rank2_move(&b2, 1, 0, &one).unwrap();
        assert_eq!(out, vec![q(1, 5), q(5, 3), q(9, 5), q(1, 3)]);
        assert_eq!(fold_rank2(&b2, 1, 0, &one).unwrap(), out);
    }

    #[test]
    fn fold_agrees_with_formula() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for t in ["B2", "C2"] {
            let d = CartanDatum::parse(t).unwrap();
            for (i, j) in [(0, 1), (1, 0)] {
                for _ in 0..20 {
                    let x: Vec<PosRat> = (0..4).map(|_| PosRat::sample(&mut rng)).collect();
                    assert_eq!(rank2_move(&d, i, j, &x).unwrap(), fold_rank2(&d, i, j, &x).unwrap());
                    let t: Vec<TropInt> = (0..4).map(|_| TropInt::sample(&mut rng)).collect();
                    assert_eq!(rank2_move(&d, i, j, &t).unwrap(), fold_rank2(&d, i, j, &t).unwrap());
                }
            }
        }
    }

    #[test]
    fn moves_are_inverse() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for t in ["A2", "B2", "G2"] {
            let d = CartanDatum::parse(t).unwrap();
            let m = d.bond_order(0, 1);
            for _ in 0..10 {
                let x: Vec<PosRat> = (0..m).map(|_| PosRat::sample(&mut rng)).collect();
                let y = rank2_move(&d, 0, 1, &x).unwrap();
                assert_eq!(rank2_move(&d, 1, 0, &y).unwrap(), x, "{t}");
            }
        }
    }

    #[test]
    fn g2_tropical_preserves_nonneg() {
        let g2 = CartanDatum::parse("G2").unwrap();
        let mut x = [0i64; 6];
        for code in 0..3usize.pow(6) {
            let mut c = code;
            for v in x.iter_mut() {
                *v = (c % 3) as i64;
                c /= 3;
            }
            for (i, j) in [(0, 1), (1, 0)] {
                let y = fold_rank2(&g2, i, j, &ints(&x)).unwrap();
                assert!(y.iter().all(|v| v.is_nonneg()));
            }
        }
    }

    #[test]
    fn order4_identities() {
        let b2 = CartanDatum::parse("B2").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let x: Vec<PosRat> = (0..4).map(|_| PosRat::sample(&mut rng)).collect();
            let (a, b, c, d) = (&x[0], &x[1], &x[2], &x[3]);
            let y = rank2_move(&b2, 1, 0, &x).unwrap();
            let (a1, b1, c1, d1) = (&y[0], &y[1], &y[2], &y[3]);
            assert_eq!(a.mul(b).mul(c), b1.mul(c1).mul(d1));
            assert_eq!(b.mul(c).mul(c).mul(d), a1.mul(b1).mul(b1).mul(c1));
            assert_eq!(a.add(c), b1.add(d1));
            assert_eq!(b.add(d), a1.add(c1));
        }
    }

    #[test]
    fn transition_examples() {
        let a2 = CartanDatum::parse("A2").unwrap();
        let out = chart_transition(&a2, &word1(&[1, 2, 1]), &word1(&[2, 1, 2]), &[q(1, 1), q(2, 1), q(3, 1)])
            .unwrap();
        assert_eq!(out, vec![q(3, 2), q(4, 1), q(1, 2)]);
        let same = chart_transition(&a2, &word1(&[1, 2, 1]), &word1(&[1, 2, 1]), &out).unwrap();
        assert_eq!(same, out);
        assert!(chart_transition(&a2, &word1(&[1, 2]), &word1(&[2, 1]), &[q(1, 1), q(1, 1)]).is_err());
    }

    #[test]
    fn a3_path_independence() {
        let a3 = CartanDatum::parse("A3").unwrap();
        let from = word1(&[1, 2, 1, 3, 2, 1]);
        let to = word1(&[3, 2, 1, 3, 2, 3]);
        let mid = word1(&[2, 1, 2, 3, 2, 1]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        for _ in 0..10 {
            let x: Vec<PosRat> = (0..6).map(|_| PosRat::sample(&mut rng)).collect();
            let direct = chart_transition(&a3, &from, &to, &x).unwrap();
            let via = chart_transition(&a3, &from, &mid, &x).unwrap();
            assert_eq!(chart_transition(&a3, &mid, &to, &via).unwrap(), direct);
        }
    }
}
