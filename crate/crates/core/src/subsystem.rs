//! The global Rindler mode register and its six tripartite reductions.

use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Modes of the dilated state, in register order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    A,
    BI,
    BII,
    CI,
    CII,
}

impl Mode {
    /// Register order of the 32-dimensional dilated state.
    pub const ALL: [Mode; 5] = [Mode::A, Mode::BI, Mode::BII, Mode::CI, Mode::CII];

    pub fn position(self) -> usize {
        self as usize
    }
}

/// A three-mode reduction of the dilated state. `1` marks Rindler region I,
/// `2` region II.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subsystem {
    AB1C1,
    AB2C1,
    AB1C2,
    AB2C2,
    AB1B2,
    AC1C2,
}

impl Subsystem {
    pub const ALL: [Subsystem; 6] = [
        Subsystem::AB1C1,
        Subsystem::AB2C1,
        Subsystem::AB1C2,
        Subsystem::AB2C2,
        Subsystem::AB1B2,
        Subsystem::AC1C2,
    ];

    /// The four reductions that keep one Bob mode and one Charlie mode.
    pub const TRIPARTITE: [Subsystem; 4] =
        [Subsystem::AB1C1, Subsystem::AB2C1, Subsystem::AB1C2, Subsystem::AB2C2];

    /// Kept modes, in the order the subsystem's qubits are laid out.
    pub fn kept_modes(self) -> [Mode; 3] {
        use Mode::*;
        match self {
            Subsystem::AB1C1 => [A, BI, CI],
            Subsystem::AB2C1 => [A, BII, CI],
            Subsystem::AB1C2 => [A, BI, CII],
            Subsystem::AB2C2 => [A, BII, CII],
            Subsystem::AB1B2 => [A, BI, BII],
            Subsystem::AC1C2 => [A, CI, CII],
        }
    }

    pub fn is_tripartite(self) -> bool {
        !matches!(self, Subsystem::AB1B2 | Subsystem::AC1C2)
    }

    pub fn name(self) -> &'static str {
        match self {
            Subsystem::AB1C1 => "ab1c1",
            Subsystem::AB2C1 => "ab2c1",
            Subsystem::AB1C2 => "ab1c2",
            Subsystem::AB2C2 => "ab2c2",
            Subsystem::AB1B2 => "ab1b2",
            Subsystem::AC1C2 => "ac1c2",
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subsystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Subsystem::ALL
            .into_iter()
            .find(|sub| sub.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::argument(alloc::format!("unknown subsystem `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_reduction_keeps_alice_and_three_modes_in_register_order() {
        for s in Subsystem::ALL {
            let kept = s.kept_modes();
            assert_eq!(kept[0], Mode::A);
            assert!(kept.windows(2).all(|w| w[0] < w[1]), "{s}");
        }
    }

    #[test]
    fn names_round_trip() {
        for s in Subsystem::ALL {
            assert_eq!(s.name().parse::<Subsystem>().unwrap(), s);
        }
        assert_eq!("AB2C1".parse::<Subsystem>().unwrap(), Subsystem::AB2C1);
        assert!("ab3c1".parse::<Subsystem>().is_err());
    }
}
