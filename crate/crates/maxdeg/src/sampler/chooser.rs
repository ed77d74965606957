//! Sources of decisions for the recursive sampler.

use rand::Rng;

use crate::scalar::Scalar;

/// Makes the weighted choices of a derivation.
pub trait Chooser<T: Scalar> {
    /// Index in `0..len` with probability `weight(i) / total`.
    fn choose(&mut self, len: usize, total: &T, weight: &mut dyn FnMut(usize) -> T) -> usize;

    /// Keeps the current derivation with probability `p`. `z` is the overall
    /// acceptance probability of the enclosing rejection loop.
    fn accept(&mut self, p: T, z: T) -> bool;
}

/// Random decisions in `f64`.
pub struct RandomChooser<'a, R: Rng + ?Sized> {
    pub rng: &'a mut R,
}

/// Visits `0, len-1, 1, len-2, ...`, so both small and large splits are cheap.
fn boustrophedon(len: usize) -> impl Iterator<Item = usize> {
    (0..len).map(move |k| if k % 2 == 0 { k / 2 } else { len - 1 - k / 2 })
}

impl<R: Rng + ?Sized> Chooser<f64> for RandomChooser<'_, R> {
    fn choose(&mut self, len: usize, total: &f64, weight: &mut dyn FnMut(usize) -> f64) -> usize {
        let target = self.rng.gen::<f64>() * total;
        let mut acc = 0.0;
        let mut last = None;
        for i in boustrophedon(len) {
            let w = weight(i);
            if w > 0.0 {
                acc += w;
                last = Some(i);
                if acc > target {
                    return i;
                }
            }
        }
        // rounding left the stored total above the actual sum: renormalize
        let target = self.rng.gen::<f64>() * acc;
        let mut run = 0.0;
        for i in boustrophedon(len) {
            let w = weight(i);
            if w > 0.0 {
                run += w;
                if run > target {
                    return i;
                }
            }
        }
        last.expect("choice with positive weight")
    }

    fn accept(&mut self, p: f64, _z: f64) -> bool {
        self.rng.gen::<f64>() < p
    }
}

struct Frame<T> {
    options: Vec<(usize, T)>,
    current: usize,
}

/// Depth-first enumeration of every derivation with its exact probability.
pub struct Exhaustive<T> {
    frames: Vec<Frame<T>>,
    depth: usize,
    weight: T,
}

impl<T: Scalar> Default for Exhaustive<T> {
    fn default() -> Self {
        Exhaustive { frames: Vec::new(), depth: 0, weight: T::from_i64(1) }
    }
}

impl<T: Scalar> Exhaustive<T> {
    /// Runs `f` once per derivation; returns each outcome with its probability.
    pub fn run<O>(mut f: impl FnMut(&mut Self) -> O) -> Vec<(O, T)> {
        let mut ch = Self::default();
        let mut out = Vec::new();
        loop {
            ch.depth = 0;
            ch.weight = T::from_i64(1);
            let o = f(&mut ch);
            assert_eq!(ch.depth, ch.frames.len(), "derivation is not replayable");
            if ch.weight != T::from_i64(0) {
                out.push((o, ch.weight.clone()));
            }
            loop {
                match ch.frames.last_mut() {
                    None => return out,
                    Some(fr) if fr.current + 1 < fr.options.len() => {
                        fr.current += 1;
                        break;
                    }
                    Some(_) => {
                        ch.frames.pop();
                    }
                }
            }
        }
    }
}

impl<T: Scalar> Chooser<T> for Exhaustive<T> {
    fn choose(&mut self, len: usize, total: &T, weight: &mut dyn FnMut(usize) -> T) -> usize {
        if self.depth == self.frames.len() {
            let zero = T::from_i64(0);
            let options: Vec<(usize, T)> = (0..len)
                .filter_map(|i| {
                    let w = weight(i);
                    (w != zero).then(|| (i, w / total))
                })
                .collect();
            assert!(!options.is_empty(), "choice with no positive weight");
            self.frames.push(Frame { options, current: 0 });
        }
        let fr = &self.frames[self.depth];
        let (i, p) = &fr.options[fr.current];
        self.weight *= p;
        self.depth += 1;
        *i
    }

    fn accept(&mut self, p: T, z: T) -> bool {
        self.weight *= p / z;
        true
    }
}
