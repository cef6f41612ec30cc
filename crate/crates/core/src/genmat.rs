//! Seeded random operators for every [`OperatorClass`].
//!
//! The generator is ChaCha8 (a counter-based stream cipher RNG) keyed by
//! 32 bytes drawn from a splitmix64 sequence started at the user seed.
//! Output is reproducible within this implementation; nothing promises
//! bit-for-bit agreement with other ports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, OperatorClass, C64};

/// Shift added to positive samples, relative to `scale`, so they are
/// strictly positive definite.
pub const POSITIVE_SHIFT: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub class: OperatorClass,
    pub n: usize,
    pub seed: u64,
    pub scale: f64,
}

impl GeneratorSpec {
    pub fn new(class: OperatorClass, n: usize, seed: u64) -> Self {
        Self {
            class,
            n,
            seed,
            scale: 1.0,
        }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyDimension);
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "scale must be positive, got {}",
                self.scale
            )));
        }
        Ok(())
    }
}

pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent stream seed from a master seed and an index.
pub fn mix_seed(master: u64, index: u64) -> u64 {
    let mut s = master ^ index.wrapping_mul(0xD6E8_FEB8_6659_FD93);
    splitmix64(&mut s);
    splitmix64(&mut s)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    let mut state = seed;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`, so `E|z|^2 = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| complex_gaussian(rng))
}

pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let x: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        let norm = crate::matcore::vec_norm(&x);
        if norm > 1e-150 {
            return x.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-distributed unitary: Gram-Schmidt (applied twice) on a Ginibre
/// sample, which leaves a positive real diagonal in the implied `R` factor.
fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(n, rng);
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| (0..n).map(|i| g[(i, j)]).collect()).collect();
    for j in 0..n {
        for _pass in 0..2 {
            for k in 0..j {
                let proj = crate::matcore::inner(&cols[j], &cols[k]);
                let (done, rest) = cols.split_at_mut(j);
                for (x, q) in rest[0].iter_mut().zip(&done[k]) {
                    *x -= proj * q;
                }
            }
        }
        let norm = crate::matcore::vec_norm(&cols[j]);
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

fn positive<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(n, rng);
    let gram = g.gram().scale_real(scale);
    let shift = ComplexMatrix::scalar(n, C64::new(POSITIVE_SHIFT * scale, 0.0));
    &gram + &shift
}

pub fn generate(spec: &GeneratorSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    let mut rng = rng_from_seed(spec.seed);
    let (n, scale) = (spec.n, spec.scale);
    let m = match spec.class {
        OperatorClass::General => ginibre(n, &mut rng).scale_real(scale),
        OperatorClass::SelfAdjoint => ginibre(n, &mut rng).real_part()?.scale_real(scale),
        OperatorClass::Positive => positive(n, scale, &mut rng),
        // unitarity fixes the scale
        OperatorClass::Unitary => haar_unitary(n, &mut rng),
        OperatorClass::Normal => {
            let u = haar_unitary(n, &mut rng);
            let d: Vec<C64> = (0..n).map(|_| complex_gaussian(&mut rng) * scale).collect();
            // U D U*: scale the columns of U, then multiply
            let ud = ComplexMatrix::from_fn(n, n, |i, j| u[(i, j)] * d[j]);
            &ud * &u.adjoint()
        }
        OperatorClass::AccretiveDissipative => {
            let p1 = positive(n, scale, &mut rng);
            let p2 = positive(n, scale, &mut rng);
            p1.plus_i_times(&p2)?
        }
    };
    Ok(m)
}

pub fn generate_unit_vector(n: usize, seed: u64) -> Result<Vec<C64>> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    Ok(random_unit_vector(n, &mut rng_from_seed(seed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{classify, default_class_tol, vec_norm};

    #[test]
    fn self_adjoint_is_exactly_hermitian() {
        let m = generate(&GeneratorSpec::new(OperatorClass::SelfAdjoint, 4, 7)).unwrap();
        assert!((&m - &m.adjoint()).frobenius_norm() <= 1e-13);
        assert!(m.is_hermitian_exact());
    }

    #[test]
    fn unitary_residual() {
        let m = generate(&GeneratorSpec::new(OperatorClass::Unitary, 4, 7)).unwrap();
        let r = (&m.gram() - &ComplexMatrix::identity(4)).frobenius_norm();
        assert!(r <= 1e-10, "{r}");
    }

    #[test]
    fn deterministic_per_spec() {
        for class in OperatorClass::ALL {
            let spec = GeneratorSpec::new(class, 5, 99).with_scale(2.5);
            assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        }
        let a = generate(&GeneratorSpec::new(OperatorClass::General, 5, 1)).unwrap();
        let b = generate(&GeneratorSpec::new(OperatorClass::General, 5, 2)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(
            generate(&GeneratorSpec::new(OperatorClass::General, 0, 1)),
            Err(Error::EmptyDimension)
        ));
        assert!(generate(&GeneratorSpec::new(OperatorClass::General, 2, 1).with_scale(0.0)).is_err());
        assert!(generate_unit_vector(0, 1).is_err());
    }

    #[test]
    fn unit_vectors() {
        let x = generate_unit_vector(1, 12345).unwrap();
        assert!((x[0].norm() - 1.0).abs() <= 1e-15);
        let a = generate_unit_vector(16, 3).unwrap();
        assert_eq!(a, generate_unit_vector(16, 3).unwrap());
        assert!((vec_norm(&a) - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn every_class_classifies_as_requested() {
        for class in OperatorClass::ALL {
            for n in [1, 2, 3, 7, 16] {
                for seed in 0..5 {
                    let m = generate(&GeneratorSpec::new(class, n, seed)).unwrap();
                    let tags = classify(&m, default_class_tol(&m)).unwrap();
                    assert!(tags.contains(class), "{class} n={n} seed={seed}");
                }
            }
        }
    }

    #[test]
    fn mixed_seeds_differ() {
        let s: Vec<u64> = (0..100).map(|i| mix_seed(42, i)).collect();
        let mut dedup = s.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), s.len());
    }
}
