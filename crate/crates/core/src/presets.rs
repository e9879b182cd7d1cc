//! Bundled parameter sets and reference values for the `table` command.
//!
//! Reference energies are double-precision literature values; they are
//! carried alongside the computed values so a run can be compared row by row.
//! They are transcribed digit for digit, hence more digits than an f64 holds.
#![allow(clippy::excessive_precision)]

/// One ground-state row: coefficients (c1, ..., cm), stopping N and E0.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateRow {
    pub coefficients: Vec<f64>,
    pub reference_n: usize,
    pub reference_energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Table {
    /// Lowest three levels of one potential at a list of truncations.
    Spectrum {
        potential: Vec<f64>,
        truncations: Vec<usize>,
        reference: Vec<[f64; 3]>,
    },
    /// Converged ground state for a family of potentials.
    GroundState { rows: Vec<GroundStateRow> },
}

/// V = -x^2 + 3x^4 - 2x^6 + 0.1x^10.
pub const TABLE1_POTENTIAL: [f64; 5] = [-1.0, 3.0, -2.0, 0.0, 0.1];

pub const TABLE1_REFERENCE: [(usize, [f64; 3]); 10] = [
    (5, [-0.183054938746611, 0.441479870018253, 2.620487757023682]),
    (10, [-0.0976947154532108, 0.670920848438211, 3.112803149372351]),
    (15, [-0.0962838618463357, 0.672983395806946, 3.110900059783247]),
    (20, [-0.0962939179110841, 0.672989564944146, 3.111020042497232]),
    (25, [-0.0962917320927764, 0.672993682058299, 3.111022843861247]),
    (30, [-0.0962919468261398, 0.672993241672601, 3.111022328272051]),
    (35, [-0.0962919458832259, 0.672993243476173, 3.111022329656410]),
    (40, [-0.0962919462260392, 0.672993242754209, 3.111022328736961]),
    (45, [-0.0962919462302011, 0.672993242746560, 3.111022328725989]),
    (50, [-0.0962919462309655, 0.672993242745170, 3.111022328724715]),
];

/// V = x^2 + 100x^8.
pub const TABLE2_POTENTIAL: [f64; 4] = [1.0, 0.0, 0.0, 100.0];

/// Reference rows as labelled (N = 3, 6, ..., 30). The values reproduce at
/// N = 5, 10, ..., 50 instead; see [`table2_truncations`].
pub const TABLE2_REFERENCE: [(usize, [f64; 3]); 10] = [
    (3, [3.18583889990311, 12.1774056576440, 25.9667305118017]),
    (6, [3.18865215097014, 12.1950090976147, 26.0334131709351]),
    (9, [3.18865434610824, 12.1950219328947, 26.0334583310462]),
    (12, [3.18865434649856, 12.1950219336715, 26.0334583214430]),
    (15, [3.18865434649231, 12.1950219336306, 26.0334583212540]),
    (18, [3.18865434649241, 12.1950219336298, 26.0334583212524]),
    (21, [3.18865434649213, 12.1950219336305, 26.0334583212523]),
    (24, [3.18865434649426, 12.1950219336305, 26.0334583212539]),
    (27, [3.18865434649200, 12.1950219336299, 26.0334583212526]),
    (30, [3.18865434649236, 12.1950219336314, 26.0334583212516]),
];

/// Truncations at which the second table's rows are actually reproduced.
pub fn table2_truncations() -> Vec<usize> {
    (1..=10).map(|i| 5 * i).collect()
}

macro_rules! rows {
    ($( [$($c:expr),+] => $n:expr, $e:expr; )+) => {
        vec![$( GroundStateRow { coefficients: vec![$($c as f64),+], reference_n: $n, reference_energy: $e } ),+]
    };
}

pub fn table3_rows() -> Vec<GroundStateRow> {
    rows! {
        [0.1, 0.1] => 20, 5.6694532770815997e-1;
        [0.1, 1] => 18, 1.0962243662319233;
        [1, 1] => 17, 1.3923516415352821;
        [1, 10] => 17, 2.4491740721179220;
        [10, 10] => 15, 3.7029004216662731;
        [-0.1, 0.1] => 21, 4.1046961591503783e-1;
        [-0.1, 1] => 18, 1.0238094432848113;
        [-1, 1] => 19, 6.5765300518294945e-1;
        [-1, 10] => 17, 2.1128778980507850;
        [-10, 10] => 19, 9.0479065692642441e-2;
    }
}

pub fn table4_rows() -> Vec<GroundStateRow> {
    rows! {
        [0.1, 0.1, 0.1] => 23, 7.6469531499643029e-1;
        [1, 1, 1] => 20, 1.6148940820343036;
        [0.1, 1, 10] => 19, 2.1277742176946535;
        [1, 10, 10] => 17, 2.7940871778594101;
        [10, 10, 10] => 16, 3.8948206179865981;
        [-0.1, 0.1, 0.1] => 23, 6.6383017274207901e-1;
        [1, -1, 1] => 23, 1.2022669303165900;
        [-0.1, -1, 10] => 20, 1.9385567907196897;
        [-1, 10, 10] => 17, 2.5157308558338656;
        [10, -10, 10] => 20, 2.9588710692969618;
    }
}

pub fn table5_rows() -> Vec<GroundStateRow> {
    rows! {
        [0.1, 0.1, 0.1, 0.1] => 23, 9.2287072386834434e-1;
        [0.1, 1, 10, 10] => 21, 2.3988345516957166;
        [1, 1, 10, 10] => 21, 2.5285749972092857;
        [1, 10, 10, 10] => 20, 2.9458972541841404;
        [10, 10, 10, 10] => 19, 3.9840271957255702;
        [-0.1, 0.1, -0.1, 0.1] => 27, 6.9423980434904176e-1;
        [0.1, -1, 10, 10] => 22, 2.2867765902246440;
        [-1, -1, 10, 10] => 22, 2.1181378732419969;
        [1, 10, -10, 10] => 23, 2.3756889547019138;
        [-10, -10, -10, 10] => 35, -9.7139097706403668;
    }
}

pub fn table6_rows() -> Vec<GroundStateRow> {
    rows! {
        [0.1, 0.1, 0.1, 0.1, 0.1] => 27, 1.0520482472987258;
        [0.1, 0.1, 1, 1, 1] => 24, 1.5773348519927783;
        [1, 1, 1, 10, 10] => 23, 2.4237300030396556;
        [1, 10, 10, 10, 10] => 21, 3.0275420892666491;
        [10, 10, 10, 10, 10] => 21, 4.0329202866021152;
        [-0.1, -0.1, 0.1, 0.1, 0.1] => 29, 9.2562395524222385e-1;
        [0.1, 0.1, -1, -1, 1] => 33, 8.6187455263857027e-1;
        [-1, 1, 1, -10, 10] => 35, 1.3353894631528094;
        [1, -10, -10, 10, 10] => 28, 1.0275704201029547;
        [-10, -10, -10, -10, 10] => 52, -2.2446238129792420e1;
    }
}

/// Preset by number (1-6).
pub fn table(id: usize) -> Option<Table> {
    let spectrum = |potential: &[f64], truncations: Vec<usize>, reference: &[(usize, [f64; 3])]| Table::Spectrum {
        potential: potential.to_vec(),
        truncations,
        reference: reference.iter().map(|r| r.1).collect(),
    };
    match id {
        1 => Some(spectrum(
            &TABLE1_POTENTIAL,
            TABLE1_REFERENCE.iter().map(|r| r.0).collect(),
            &TABLE1_REFERENCE,
        )),
        2 => Some(spectrum(&TABLE2_POTENTIAL, table2_truncations(), &TABLE2_REFERENCE)),
        3 => Some(Table::GroundState { rows: table3_rows() }),
        4 => Some(Table::GroundState { rows: table4_rows() }),
        5 => Some(Table::GroundState { rows: table5_rows() }),
        6 => Some(Table::GroundState { rows: table6_rows() }),
        _ => None,
    }
}
