//! Variable identifiers.
//!
//! A [`VarId`] packs its kind into the top four bits so that the derived
//! integer order is the kind order `qh < t < u < z < x < aux`, and positional
//! indices or the aux name into the rest.

use std::fmt;

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VarKind {
    Qh,
    /// Edge parameter, by edge position.
    T(u32),
    /// Framing character `u[i,a]`, by vertex position and 1-based slot.
    U(u32, u32),
    /// Shuffle variable `z[i,a]`.
    Z(u32, u32),
    /// Chern root `x[i,a]` of the tautological bundle.
    X(u32, u32),
    Aux(u32),
}

const KIND_SHIFT: u32 = 28;
const PAYLOAD: u32 = (1 << KIND_SHIFT) - 1;
const AUX_LEN: usize = 5;
const AUX_BASE: u32 = 37;

fn aux_digit(c: u8) -> Option<u32> {
    match c {
        b'0'..=b'9' => Some((c - b'0') as u32 + 1),
        b'a'..=b'z' => Some((c - b'a') as u32 + 11),
        _ => None,
    }
}

fn aux_char(d: u32) -> char {
    match d {
        1..=10 => (b'0' + (d - 1) as u8) as char,
        _ => (b'a' + (d - 11) as u8) as char,
    }
}

impl VarId {
    pub const QH: VarId = VarId(0);

    fn pack(kind: u32, payload: u32) -> VarId {
        assert!(payload <= PAYLOAD);
        VarId((kind << KIND_SHIFT) | payload)
    }

    fn pair(i: u32, a: u32) -> u32 {
        assert!(i < (1 << 12) && a < (1 << 16), "variable index out of range");
        (i << 16) | a
    }

    pub fn t(edge: usize) -> VarId {
        Self::pack(1, edge as u32)
    }

    pub fn u(vertex: usize, slot: usize) -> VarId {
        assert!(slot >= 1);
        Self::pack(2, Self::pair(vertex as u32, slot as u32))
    }

    pub fn z(vertex: usize, slot: usize) -> VarId {
        assert!(slot >= 1);
        Self::pack(3, Self::pair(vertex as u32, slot as u32))
    }

    pub fn x(vertex: usize, slot: usize) -> VarId {
        assert!(slot >= 1);
        Self::pack(4, Self::pair(vertex as u32, slot as u32))
    }

    /// Auxiliary symbol: 1 to 5 characters from `[a-z0-9]`, starting with a letter.
    pub fn aux(name: &str) -> Option<VarId> {
        let bytes = name.as_bytes();
        if bytes.is_empty() || bytes.len() > AUX_LEN || !bytes[0].is_ascii_lowercase() {
            return None;
        }
        let mut code = 0u32;
        for k in 0..AUX_LEN {
            let d = match bytes.get(k) {
                Some(c) => aux_digit(*c)?,
                None => 0,
            };
            code = code * AUX_BASE + d;
        }
        Some(Self::pack(5, code))
    }

    pub fn kind(self) -> VarKind {
        let p = self.0 & PAYLOAD;
        let (i, a) = (p >> 16, p & 0xffff);
        match self.0 >> KIND_SHIFT {
            0 => VarKind::Qh,
            1 => VarKind::T(p),
            2 => VarKind::U(i, a),
            3 => VarKind::Z(i, a),
            4 => VarKind::X(i, a),
            _ => VarKind::Aux(p),
        }
    }

    pub fn is_z(self) -> bool {
        matches!(self.kind(), VarKind::Z(..))
    }

    pub fn aux_name(self) -> Option<String> {
        match self.kind() {
            VarKind::Aux(mut code) => {
                let mut digits = [0u32; AUX_LEN];
                for k in (0..AUX_LEN).rev() {
                    digits[k] = code % AUX_BASE;
                    code /= AUX_BASE;
                }
                Some(digits.iter().take_while(|d| **d != 0).map(|d| aux_char(*d)).collect())
            }
            _ => None,
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            VarKind::Qh => write!(f, "qh"),
            VarKind::T(e) => write!(f, "t[{}]", e + 1),
            VarKind::U(i, a) => write!(f, "u[{},{}]", i + 1, a),
            VarKind::Z(i, a) => write!(f, "z[{},{}]", i + 1, a),
            VarKind::X(i, a) => write!(f, "x[{},{}]", i + 1, a),
            VarKind::Aux(_) => write!(f, "{}", self.aux_name().unwrap()),
        }
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_order() {
        let vs = [VarId::QH, VarId::t(3), VarId::u(0, 1), VarId::z(0, 1), VarId::x(0, 1), VarId::aux("a").unwrap()];
        for w in vs.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(VarId::u(0, 2) < VarId::u(1, 1));
    }

    #[test]
    fn aux_names_round_trip_and_sort() {
        for n in ["z", "y", "u", "l", "ab12", "zzzzz"] {
            assert_eq!(VarId::aux(n).unwrap().aux_name().unwrap(), n);
        }
        assert!(VarId::aux("a").unwrap() < VarId::aux("ab").unwrap());
        assert!(VarId::aux("ab").unwrap() < VarId::aux("b").unwrap());
        assert!(VarId::aux("1a").is_none());
        assert_eq!(VarId::u(1, 2).to_string(), "u[2,2]");
    }
}
