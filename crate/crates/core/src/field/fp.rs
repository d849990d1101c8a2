use std::fmt;

/// Element of the prime field `F_p`, carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = (value as i128).rem_euclid(m) as u64;
        Fp { value: v, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Fp) {
        assert_eq!(self.modulus, other.modulus, "mixing prime fields");
    }

    pub fn add(&self, other: &Fp) -> Fp {
        self.check(other);
        let v = (self.value as u128 + other.value as u128) % self.modulus as u128;
        Fp { value: v as u64, modulus: self.modulus }
    }

    pub fn sub(&self, other: &Fp) -> Fp {
        self.check(other);
        let v = (self.value as u128 + self.modulus as u128 - other.value as u128)
            % self.modulus as u128;
        Fp { value: v as u64, modulus: self.modulus }
    }

    pub fn mul(&self, other: &Fp) -> Fp {
        self.check(other);
        let v = (self.value as u128 * other.value as u128) % self.modulus as u128;
        Fp { value: v as u64, modulus: self.modulus }
    }

    pub fn neg(&self) -> Fp {
        Fp { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp { value: 1 % self.modulus, modulus: self.modulus };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by Fermat. Panics on zero.
    pub fn inv(&self) -> Fp {
        assert!(self.value != 0, "inverting zero in F_{}", self.modulus);
        self.pow(self.modulus - 2)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
