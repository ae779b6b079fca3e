//! Integer q-series used to build character coefficients.

use crate::error::{Error, Result};

/// Partition numbers `p(0..len)`, the coefficients of `1/Π(1 - q^n)`.
pub fn partitions(len: usize) -> Vec<u128> {
    let mut p = vec![0u128; len];
    if len > 0 {
        p[0] = 1;
    }
    for part in 1..len {
        for i in part..len {
            p[i] += p[i - part];
        }
    }
    p
}

/// Coefficients of `Π_{e in exps} (1 + x^e)` up to degree `len - 1`.
pub fn product_one_plus(exps: impl IntoIterator<Item = usize>, len: usize) -> Vec<u128> {
    let mut a = vec![0u128; len];
    if len > 0 {
        a[0] = 1;
    }
    for e in exps {
        if e == 0 || e >= len {
            continue;
        }
        for i in (e..len).rev() {
            a[i] += a[i - e];
        }
    }
    a
}

/// Truncated product of two series.
pub fn mul(a: &[u128], b: &[u128], len: usize) -> Vec<u128> {
    let mut out = vec![0u128; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn to_u64(v: Vec<u128>) -> Result<Vec<u64>> {
    v.into_iter()
        .map(|x| {
            u64::try_from(x)
                .map_err(|_| Error::InvalidParameters(format!("coefficient {x} overflows u64")))
        })
        .collect()
}
