//! Fixed-width unsigned integers for the hot counting loops.

use num_bigint::BigUint;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Wide<const L: usize>(pub [u64; L]);

impl<const L: usize> Wide<L> {
    pub const ZERO: Self = Wide([0; L]);

    #[inline]
    pub fn add_assign(&mut self, rhs: &Self) {
        let mut carry = false;
        for i in 0..L {
            let (s1, c1) = self.0[i].overflowing_add(rhs.0[i]);
            let (s2, c2) = s1.overflowing_add(carry as u64);
            self.0[i] = s2;
            carry = c1 | c2;
        }
        debug_assert!(!carry, "wide overflow");
    }

    #[inline]
    pub fn mul_small(&self, k: u64) -> Self {
        let mut out = [0u64; L];
        let mut carry = 0u128;
        for (o, &limb) in out.iter_mut().zip(self.0.iter()) {
            let p = limb as u128 * k as u128 + carry;
            *o = p as u64;
            carry = p >> 64;
        }
        debug_assert_eq!(carry, 0, "wide overflow");
        Wide(out)
    }

    pub fn from_biguint(v: &BigUint) -> Option<Self> {
        let digits = v.to_u64_digits();
        if digits.len() > L {
            return None;
        }
        let mut out = [0u64; L];
        out[..digits.len()].copy_from_slice(&digits);
        Some(Wide(out))
    }

    pub fn to_biguint(&self) -> BigUint {
        let mut bytes = alloc::vec::Vec::with_capacity(L * 8);
        for limb in self.0 {
            bytes.extend_from_slice(&limb.to_le_bytes());
        }
        BigUint::from_bytes_le(&bytes)
    }
}

/// Limb count needed to hold values below `2^bits`, or `None` past 8 limbs.
pub(crate) fn limbs_for_bits(bits: u64) -> Option<usize> {
    let l = (bits as usize).div_ceil(64).max(1);
    (l <= 8).then_some(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carry_and_roundtrip() {
        let mut a = Wide::<3>([u64::MAX, u64::MAX, 0]);
        a.add_assign(&Wide([1, 0, 0]));
        assert_eq!(a.0, [0, 0, 1]);
        let b = Wide::<3>([u64::MAX, 1, 0]).mul_small(3);
        let expect = (BigUint::from(u64::MAX) + (BigUint::from(1u32) << 64)) * 3u32;
        assert_eq!(b.to_biguint(), expect);
        assert_eq!(Wide::<3>::from_biguint(&expect), Some(b));
        assert_eq!(Wide::<1>::from_biguint(&expect), None);
    }
}
