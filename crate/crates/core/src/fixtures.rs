//! Built-in codes and weighted lattices from the published worked examples,
//! embedded so nothing has to be read from disk.

use crate::error::Result;
use crate::lattice::SubspaceLattice;
use crate::rcode::{parse_code, Code, MatrixCode};
use crate::wlat::{parse_wlat, LoadedWlat, WeightedLattice};

pub const EX3_7_WLAT: &str = include_str!("../../../fixtures/ex3_7.wlat");
pub const EX4_3_RMC: &str = include_str!("../../../fixtures/ex4_3.rmc");
pub const EX5_8_RMC: &str = include_str!("../../../fixtures/ex5_8.rmc");
pub const EX5_9_RMC: &str = include_str!("../../../fixtures/ex5_9.rmc");

/// One row of the critical-exponent table: a code with its published
/// lower bound `⌈n/m⌉` and critical exponent.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub name: &'static str,
    pub params: &'static str,
    pub text: &'static str,
    pub bound: u64,
    pub crit: u64,
}

pub const TABLE1: [TableRow; 5] = [
    TableRow {
        name: "table1_row1",
        params: "[6x3,5,2]_2",
        text: include_str!("../../../fixtures/table1_row1.rmc"),
        bound: 2,
        crit: 3,
    },
    TableRow {
        name: "table1_row2",
        params: "[5x5,6,3]_2",
        text: include_str!("../../../fixtures/table1_row2.rmc"),
        bound: 1,
        crit: 2,
    },
    TableRow {
        name: "table1_row3",
        params: "[4x4,5,3]_2",
        text: include_str!("../../../fixtures/table1_row3.rmc"),
        bound: 1,
        crit: 2,
    },
    TableRow {
        name: "table1_row4",
        params: "[5x4,15,1]_2",
        text: include_str!("../../../fixtures/table1_row4.rmc"),
        bound: 2,
        crit: 2,
    },
    TableRow {
        name: "table1_row5",
        params: "[6x3,4,2]_2",
        text: include_str!("../../../fixtures/table1_row5.rmc"),
        bound: 2,
        crit: 3,
    },
];

impl TableRow {
    pub fn code(&self) -> Result<Code> {
        parse_code(self.text)
    }
}

/// Names accepted by [`code_text`].
pub const CODE_NAMES: [&str; 8] = [
    "ex4_3",
    "ex5_8",
    "ex5_9",
    "table1_row1",
    "table1_row2",
    "table1_row3",
    "table1_row4",
    "table1_row5",
];

/// Source text of a built-in code file.
pub fn code_text(name: &str) -> Option<&'static str> {
    match name {
        "ex4_3" => Some(EX4_3_RMC),
        "ex5_8" => Some(EX5_8_RMC),
        "ex5_9" => Some(EX5_9_RMC),
        _ => TABLE1.iter().find(|r| r.name == name).map(|r| r.text),
    }
}

fn matrix(text: &str) -> MatrixCode {
    match parse_code(text).expect("built-in fixture parses") {
        Code::Matrix(c) => c,
        Code::Vector(_) => unreachable!("built-in fixture is a matrix code"),
    }
}

/// The F_2-[5×3,6,1] code.
pub fn ex4_3() -> MatrixCode {
    matrix(EX4_3_RMC)
}

/// The F_2-[3×3,4,2] one-weight code.
pub fn ex5_8() -> MatrixCode {
    matrix(EX5_8_RMC)
}

/// The F_2-[4×2,3,1] code.
pub fn ex5_9() -> MatrixCode {
    matrix(EX5_9_RMC)
}

/// The explicit (2,3)-polymatroid on `L(F_2^3)` and its `r`.
pub fn ex3_7() -> (WeightedLattice<SubspaceLattice>, u64) {
    match parse_wlat(EX3_7_WLAT).expect("built-in fixture parses") {
        LoadedWlat::Subspace(w, r) => (w, r),
        LoadedWlat::Boolean(..) => unreachable!("built-in fixture is a subspace lattice"),
    }
}
