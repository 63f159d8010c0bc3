//! Seeded sampling of small exact test data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, QuadElement, Rational, SpecRef};
use crate::group::Coord;
use crate::roots::{roots, Root};
use crate::steinberg::{SteinbergWord, Symbol};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A child sampler with an independent stream, for parallel tasks.
    pub fn fork(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    /// `p/q` with `|p| ≤ 6`, `1 ≤ q ≤ 4`.
    pub fn rational(&mut self) -> Rational {
        let p: i64 = self.rng.gen_range(-6..=6);
        let q: i64 = self.rng.gen_range(1..=4);
        Rational::new(p.into(), q.into())
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != Rational::from_integer(0.into()) {
                return r;
            }
        }
    }

    /// An element whose coefficients below degree `level` vanish, i.e. a
    /// random point of `J^level`.
    pub fn element_in(&mut self, spec: &SpecRef, level: usize) -> AlgebraElement {
        let coeffs = spec
            .factors()
            .iter()
            .map(|&m| {
                (0..m)
                    .map(|k| {
                        if k < level {
                            Rational::from_integer(0.into())
                        } else {
                            self.rational()
                        }
                    })
                    .collect()
            })
            .collect();
        AlgebraElement::from_coeffs(spec, coeffs).expect("shape matches spec")
    }

    pub fn element(&mut self, spec: &SpecRef) -> AlgebraElement {
        self.element_in(spec, 0)
    }

    pub fn unit(&mut self, spec: &SpecRef) -> AlgebraElement {
        loop {
            let x = self.element(spec);
            if x.is_unit() {
                return x;
            }
        }
    }

    pub fn quad_in(&mut self, spec: &SpecRef, level: usize) -> QuadElement {
        QuadElement::new(self.element_in(spec, level), self.element_in(spec, level))
    }

    pub fn quad(&mut self, spec: &SpecRef) -> QuadElement {
        self.quad_in(spec, 0)
    }

    pub fn unit_quad(&mut self, spec: &SpecRef) -> QuadElement {
        loop {
            let x = self.quad(spec);
            if x.is_unit() {
                return x;
            }
        }
    }

    pub fn coord_in(&mut self, root: &Root, spec: &SpecRef, level: usize) -> Coord {
        if root.is_long() {
            Coord::Long(self.element_in(spec, level))
        } else {
            Coord::Short(self.quad_in(spec, level))
        }
    }

    pub fn coord(&mut self, root: &Root, spec: &SpecRef) -> Coord {
        self.coord_in(root, spec, 0)
    }

    /// A word of `len` random generators with coordinates in `J^level`.
    pub fn word_in(&mut self, n: usize, spec: &SpecRef, len: usize, level: usize) -> SteinbergWord {
        let all = roots(n).expect("n >= 2");
        let mut w = SteinbergWord::empty(n, spec);
        for _ in 0..len {
            let root = all[self.index(all.len())].clone();
            let coord = self.coord_in(&root, spec, level);
            let inverse = self.coin();
            w.push(Symbol::new(root, coord, inverse).expect("kind matches root"));
        }
        w
    }

    pub fn word(&mut self, n: usize, spec: &SpecRef, len: usize) -> SteinbergWord {
        self.word_in(n, spec, len, 0)
    }
}
