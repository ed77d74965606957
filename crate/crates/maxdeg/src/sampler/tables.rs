//! Coefficient tables driving the recursive sampler.
//!
//! Every class is a grammar over vertex atoms `V`: for 2-connected classes
//! `V = x`, for connected classes `V = x SET(H)` where `H = B'(V)` is a block
//! hanging at a vertex whose other vertices are again atoms. All tables are
//! computed by online convolution recurrences, so one pass to `nmax` serves
//! every smaller size. Float tables store `[x^n] F * r^n` for a scale `r`
//! (the dominant singularity), which keeps values in range for large `n`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use crate::class::{Connectivity, Family, GraphClass};
use crate::scalar::Scalar;

/// Family-specific grammar tables, all indexed by size in `x`.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyTables<T> {
    /// Root faces of polygon dissections: `A = V F L`, `F = 1 + A`,
    /// `L = 1 + 2A`, `P = F L`; `va = V A`.
    Outerplanar { a: Vec<T>, p: Vec<T>, va: Vec<T> },
    /// Networks: `S = (1 + P) V D`, `P = 2 exp(S) - 2 - S`, `D = 1 + S + P`,
    /// `es = exp(S)`, `t = (1 + P) D`, and `r = V exp(S)` for blocks rooted
    /// at an oriented edge leaving the root vertex.
    SeriesParallel { s: Vec<T>, es: Vec<T>, p: Vec<T>, d: Vec<T>, t: Vec<T>, r: Vec<T> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tables<T> {
    pub class: GraphClass,
    pub nmax: usize,
    pub scale: T,
    /// Atom series `V`.
    pub v: Vec<T>,
    /// `SET(H)`; only meaningful for connected classes.
    pub cprime: Vec<T>,
    /// Vertex-rooted blocks over atoms, `H = B'(V)`.
    pub h: Vec<T>,
    pub family: FamilyTables<T>,
}

/// `sum_i a[i] * b[len - 1 - i]` with independent accumulators.
fn dot_rev<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let zero = T::from_i64(0);
    let mut acc = [zero.clone(), zero.clone(), zero.clone(), zero];
    let ca = a.chunks_exact(4);
    let cb = b.rchunks_exact(4);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        acc[0].mul_acc(&x[0], &y[3]);
        acc[1].mul_acc(&x[1], &y[2]);
        acc[2].mul_acc(&x[2], &y[1]);
        acc[3].mul_acc(&x[3], &y[0]);
    }
    // leftovers: the tail of `a` meets the head of `b`
    for (x, y) in ra.iter().zip(rb.iter().rev()) {
        acc[0].mul_acc(x, y);
    }
    let [a0, a1, a2, a3] = acc;
    (a0 + a1) + (a2 + a3)
}

/// `sum_{i=lo}^{n} a[i] b[n - i]`.
fn conv<T: Scalar>(a: &[T], b: &[T], n: usize, lo: usize) -> T {
    if lo > n {
        return T::from_i64(0);
    }
    dot_rev(&a[lo..=n], &b[..=n - lo])
}

/// `sum_{j=1}^{n} j a[j] b[n - j]`, the pointing recurrence for `exp`.
fn pointed_conv<T: Scalar>(a: &[T], b: &[T], n: usize) -> T {
    let mut acc = T::from_i64(0);
    for j in 1..=n {
        if a[j] != T::from_i64(0) {
            let mut t = a[j].clone();
            t *= T::from_i64(j as i64);
            acc.mul_acc(&t, &b[n - j]);
        }
    }
    acc
}

impl<T: Scalar> Tables<T> {
    /// Tables up to size `nmax` at scale `scale` (use 1 for exact counts).
    pub fn build(class: GraphClass, nmax: usize, scale: T) -> Self {
        let zero = T::from_i64(0);
        let one = T::from_i64(1);
        let len = nmax + 1;
        let connected = class.connectivity == Connectivity::Connected;
        let mut v = vec![zero.clone(); len];
        let mut cprime = vec![zero.clone(); len];
        let mut h = vec![zero.clone(); len];
        cprime[0] = one.clone();
        if !connected && nmax >= 1 {
            v[1] = scale.clone();
        }
        let family = match class.family {
            Family::Outerplanar => {
                let mut a = vec![zero.clone(); len];
                let mut f = vec![zero.clone(); len];
                let mut l = vec![zero.clone(); len];
                let mut p = vec![zero.clone(); len];
                let mut va = vec![zero.clone(); len];
                f[0] = one.clone();
                l[0] = one.clone();
                p[0] = one.clone();
                for n in 1..len {
                    if connected {
                        v[n] = scale.clone() * &cprime[n - 1];
                    }
                    a[n] = conv(&v, &p, n, 1);
                    f[n] = a[n].clone();
                    l[n] = a[n].clone() + &a[n];
                    p[n] = conv(&f, &l, n, 0);
                    va[n] = conv(&v, &a, n, 1);
                    h[n] = v[n].clone() + va[n].clone() / T::from_i64(2);
                    if connected {
                        cprime[n] = pointed_conv(&h, &cprime, n) / T::from_i64(n as i64);
                    }
                }
                FamilyTables::Outerplanar { a, p, va }
            }
            Family::SeriesParallel => {
                let mut s = vec![zero.clone(); len];
                let mut es = vec![zero.clone(); len];
                let mut pp = vec![zero.clone(); len];
                let mut np = vec![zero.clone(); len];
                let mut d = vec![zero.clone(); len];
                let mut t = vec![zero.clone(); len];
                let mut r = vec![zero.clone(); len];
                // B'(V) = U - U^2 (1 + D/2) / (1 + U) with U = V D
                let mut u = vec![zero.clone(); len];
                let mut q = vec![zero.clone(); len];
                let mut u2 = vec![zero.clone(); len];
                let mut half_d = vec![zero.clone(); len];
                let mut w = vec![zero.clone(); len];
                let half = T::from_ratio(1, 2);
                es[0] = one.clone();
                np[0] = one.clone();
                d[0] = one.clone();
                t[0] = one.clone();
                q[0] = one.clone();
                half_d[0] = one.clone() + &half;
                for n in 1..len {
                    if connected {
                        v[n] = scale.clone() * &cprime[n - 1];
                    }
                    s[n] = conv(&v, &t, n, 1);
                    es[n] = pointed_conv(&s, &es, n) / T::from_i64(n as i64);
                    pp[n] = es[n].clone() + &es[n] - &s[n];
                    np[n] = pp[n].clone();
                    d[n] = s[n].clone() + &pp[n];
                    t[n] = conv(&np, &d, n, 0);
                    r[n] = conv(&v, &es, n, 1);
                    half_d[n] = d[n].clone() * &half;
                    u[n] = conv(&v, &d, n, 1);
                    q[n] = -conv(&u, &q, n, 1);
                    u2[n] = conv(&u, &u, n, 0);
                    w[n] = conv(&u2, &half_d, n, 0);
                    h[n] = u[n].clone() - conv(&w, &q, n, 0);
                    if connected {
                        cprime[n] = pointed_conv(&h, &cprime, n) / T::from_i64(n as i64);
                    }
                }
                FamilyTables::SeriesParallel { s, es, p: pp, d, t, r }
            }
        };
        Tables { class, nmax, scale, v, cprime, h, family }
    }

    /// Weight of all structures of `n` vertices.
    pub fn total(&self, n: usize) -> T {
        match self.class.connectivity {
            Connectivity::TwoConnected => self.h[n - 1].clone(),
            Connectivity::Connected => self.v[n].clone(),
        }
    }
}

const MAGIC: &[u8; 8] = b"MAXDEGT1";

fn put_vec(w: &mut impl Write, v: &[f64]) -> io::Result<()> {
    w.write_all(&(v.len() as u64).to_le_bytes())?;
    for x in v {
        w.write_all(&x.to_le_bytes())?;
    }
    Ok(())
}

fn get_u64(r: &mut impl Read) -> io::Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn get_vec(r: &mut impl Read) -> io::Result<Vec<f64>> {
    let n = get_u64(r)? as usize;
    let mut bytes = vec![0u8; n * 8];
    r.read_exact(&mut bytes)?;
    Ok(bytes.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect())
}

impl Tables<f64> {
    fn vectors(&self) -> Vec<&Vec<f64>> {
        let mut out = vec![&self.v, &self.cprime, &self.h];
        match &self.family {
            FamilyTables::Outerplanar { a, p, va } => out.extend([a, p, va]),
            FamilyTables::SeriesParallel { s, es, p, d, t, r } => out.extend([s, es, p, d, t, r]),
        }
        out
    }

    /// Raw little-endian serialization.
    pub fn write_to(&self, w: &mut impl Write) -> io::Result<()> {
        w.write_all(MAGIC)?;
        let name = self.class.name().as_bytes();
        w.write_all(&(name.len() as u64).to_le_bytes())?;
        w.write_all(name)?;
        w.write_all(&(self.nmax as u64).to_le_bytes())?;
        w.write_all(&self.scale.to_le_bytes())?;
        for v in self.vectors() {
            put_vec(w, v)?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> io::Result<Self> {
        let bad = |m: &str| io::Error::new(io::ErrorKind::InvalidData, m.to_string());
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(bad("not a table file"));
        }
        let nlen = get_u64(r)? as usize;
        let mut name = vec![0u8; nlen];
        r.read_exact(&mut name)?;
        let class: GraphClass = String::from_utf8(name)
            .map_err(|_| bad("class name"))?
            .parse()
            .map_err(|_| bad("unknown class"))?;
        let nmax = get_u64(r)? as usize;
        let scale = f64::from_bits(get_u64(r)?);
        let v = get_vec(r)?;
        let cprime = get_vec(r)?;
        let h = get_vec(r)?;
        let family = match class.family {
            Family::Outerplanar => {
                FamilyTables::Outerplanar { a: get_vec(r)?, p: get_vec(r)?, va: get_vec(r)? }
            }
            Family::SeriesParallel => FamilyTables::SeriesParallel {
                s: get_vec(r)?,
                es: get_vec(r)?,
                p: get_vec(r)?,
                d: get_vec(r)?,
                t: get_vec(r)?,
                r: get_vec(r)?,
            },
        };
        let t = Tables { class, nmax, scale, v, cprime, h, family };
        if t.vectors().iter().any(|x| x.len() != nmax + 1) {
            return Err(bad("truncated table"));
        }
        Ok(t)
    }

    /// Float tables scaled by the class singularity.
    pub fn float(class: GraphClass, nmax: usize) -> Self {
        Self::build(class, nmax, singularity(class))
    }

    /// Loads tables of at least `nmax` from `dir` or builds and stores them.
    pub fn cached(class: GraphClass, nmax: usize, dir: Option<&Path>) -> io::Result<Self> {
        let Some(dir) = dir else {
            return Ok(Self::float(class, nmax));
        };
        let path = cache_path(dir, class, nmax);
        if let Ok(f) = fs::File::open(&path) {
            if let Ok(t) = Self::read_from(&mut io::BufReader::new(f)) {
                if t.class == class && t.nmax == nmax {
                    return Ok(t);
                }
            }
        }
        let t = Self::float(class, nmax);
        fs::create_dir_all(dir)?;
        let tmp = path.with_extension("tmp");
        {
            let mut w = io::BufWriter::new(fs::File::create(&tmp)?);
            t.write_to(&mut w)?;
            w.flush()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(t)
    }
}

fn cache_path(dir: &Path, class: GraphClass, nmax: usize) -> PathBuf {
    dir.join(format!("{}-{nmax}.tbl", class.name()))
}

/// Environment variable naming the table cache directory.
pub const CACHE_ENV: &str = "MAXDEG_CACHE_DIR";

/// Cache directory from the environment, if set.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()).map(PathBuf::from)
}

/// Dominant singularity of the class counting series.
pub fn singularity(class: GraphClass) -> f64 {
    crate::constants::solve_constants::<f64>(class).expect("constants solve in f64").x0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connected::rooted_for_class;
    use crate::scalar::{factorial, Rational};
    use crate::series::XVar;

    #[test]
    fn dot_rev_matches_naive() {
        for len in 0..11 {
            let a: Vec<f64> = (0..len).map(|i| i as f64 + 1.0).collect();
            let b: Vec<f64> = (0..len).map(|i| (i * i) as f64 - 2.0).collect();
            let naive: f64 = (0..len).map(|i| a[i] * b[len - 1 - i]).sum();
            assert_eq!(dot_rev(&a, &b), naive);
        }
    }

    #[test]
    fn tables_reproduce_class_counts() {
        let n = 9;
        for class in GraphClass::ALL {
            let t = Tables::<Rational>::build(class, n, Rational::from_i64(1));
            let g = rooted_for_class(class, n, 1, None, XVar::<Rational>::unit()).unwrap();
            for m in class.min_size()..=n {
                let from_tables = t.total(m) * factorial::<Rational>(m - 1);
                let expect = g.g_prime.coeff(m - 1, 0, 0) * factorial::<Rational>(m - 1);
                assert_eq!(from_tables, expect, "{class} n={m}");
            }
        }
    }

    #[test]
    fn scaled_tables_match_exact() {
        let r = 0.1;
        for class in GraphClass::ALL {
            let e = Tables::<Rational>::build(class, 30, Rational::from_i64(1));
            let f = Tables::<f64>::build(class, 30, r);
            for n in 1..=30 {
                let want = Scalar::to_f64(&e.h[n]) * r.powi(n as i32);
                assert!((want - f.h[n]).abs() <= 1e-12 * want.abs(), "{class} {n}");
            }
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("maxdeg-cache-{}", std::process::id()));
        let t = Tables::cached(GraphClass::CONN_SP, 50, Some(&dir)).unwrap();
        let again = Tables::cached(GraphClass::CONN_SP, 50, Some(&dir)).unwrap();
        assert_eq!(t, again);
        assert!(cache_path(&dir, GraphClass::CONN_SP, 50).exists());
        fs::remove_dir_all(&dir).ok();
    }
}
