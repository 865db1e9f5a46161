use super::HopfMonoid;
use crate::algebra::TruncSeries;
use crate::error::{Error, Result};
use crate::ordered::{Ground, Relabel, Relabeling};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::hash::Hash;

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Number of orbits of the symmetric group of `{0..n-1}` on `keys`, which
/// must be closed under relabeling. Orbits are merged along the adjacent
/// transpositions, which generate the group.
pub fn orbit_count<K: Relabel + Clone + Eq + Hash>(keys: &[K], n: usize) -> Result<usize> {
    let index: HashMap<&K, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut parent: Vec<usize> = (0..keys.len()).collect();
    for i in 0..n.saturating_sub(1) as u8 {
        let swap = Relabeling::new((0..n as u8).map(|l| {
            let m = if l == i {
                i + 1
            } else if l == i + 1 {
                i
            } else {
                l
            };
            (l, m)
        }))?;
        for (a, k) in keys.iter().enumerate() {
            let image = k.relabel(&swap)?;
            let b = *index
                .get(&image)
                .ok_or_else(|| Error::Invalid("key set is not closed under relabeling".into()))?;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
    }
    Ok((0..keys.len()).filter(|&i| find(&mut parent, i) == i).count())
}

/// `Σ_n dim h[n]_{S_n} x^n` through `x^order`.
pub fn type_series<H: HopfMonoid + ?Sized>(h: &H, order: usize) -> Result<TruncSeries<BigInt>> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut factorial = BigInt::from(1);
    for n in 0..=order {
        if n > 0 {
            factorial *= n;
        }
        let ground = Ground::standard(n);
        let c = if h.free_order_factor() {
            let dim = BigInt::from(h.dimension(ground)?);
            if &dim % &factorial != BigInt::from(0) {
                return Err(Error::Invalid(format!("{}: dim h[{n}] not divisible by {n}!", h.name())));
            }
            dim / &factorial
        } else {
            BigInt::from(orbit_count(&h.basis(ground)?, n)?)
        };
        coeffs.push(c);
    }
    TruncSeries::new(coeffs, order)
}
