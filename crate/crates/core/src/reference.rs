//! Published reference data for eight teams and the backtrack counts
//! reported for the mirror and inversion variants.

use crate::schedule::{ScheduleGrid, TeamCount};

/// A known valid schedule for eight teams.
pub fn valid_eight() -> ScheduleGrid {
    ScheduleGrid::from_pairs(
        TeamCount::new(8).unwrap(),
        &[
            &[(1, 2), (6, 8), (2, 5), (4, 5), (4, 7), (3, 8), (1, 7)],
            &[(3, 7), (5, 7), (3, 4), (1, 8), (5, 6), (2, 4), (2, 6)],
            &[(4, 6), (1, 4), (7, 8), (3, 6), (2, 8), (1, 5), (3, 5)],
            &[(5, 8), (2, 3), (1, 6), (2, 7), (1, 3), (6, 7), (4, 8)],
        ],
    )
    .unwrap()
}

/// The circle-method schedule for eight teams, as published.
pub fn circle_eight() -> ScheduleGrid {
    ScheduleGrid::from_pairs(
        TeamCount::new(8).unwrap(),
        &[
            &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 7)],
            &[(3, 7), (1, 4), (2, 5), (3, 6), (4, 7), (1, 5), (2, 6)],
            &[(4, 6), (5, 7), (1, 6), (2, 7), (1, 3), (2, 4), (3, 5)],
            &[(5, 8), (6, 8), (7, 8), (1, 8), (2, 8), (3, 8), (4, 8)],
        ],
    )
    .unwrap()
}

/// Published `(T, backtracks)` for the mirror variant, first solution.
/// `None` marks counts that overflowed 32 bits.
pub const MIRROR_BACKTRACKS: &[(u32, Option<u64>)] = &[
    (6, Some(1)),
    (8, Some(6)),
    (10, Some(350)),
    (12, Some(25)),
    (14, Some(65)),
    (16, Some(713)),
    (18, Some(772)),
    (20, Some(708)),
    (22, Some(1_142)),
    (24, Some(5_332)),
    (26, Some(5_313)),
    (28, Some(16_365)),
    (30, Some(49_620)),
    (32, Some(91_094)),
    (34, Some(131_169)),
    (36, Some(524_491)),
    (38, Some(763_317)),
    (40, Some(7_335_775)),
    (42, Some(11_575_637)),
    (44, Some(79_587_812)),
    (46, Some(38_865_293)),
    (48, Some(4_289_081_568)),
    (50, None),
];

/// Published `(T, backtracks)` for the inversion variant, first solution.
/// `T = 6` and `T = 10` have no solution in that restricted space.
pub const INVERSION_BACKTRACKS: &[(u32, Option<u64>)] = &[
    (8, Some(5)),
    (12, Some(111)),
    (14, Some(125)),
    (16, Some(560)),
    (18, Some(465)),
    (20, Some(227)),
    (22, Some(3_237)),
    (24, Some(736)),
    (26, Some(2_311)),
    (28, Some(85_315)),
    (30, Some(68_033)),
    (32, Some(22_407)),
    (34, Some(21_696)),
    (36, Some(248_184)),
    (38, Some(83_636)),
    (40, Some(220_480)),
    (42, Some(612_423)),
    (44, Some(2_489_017)),
    (46, Some(3_430_033)),
    (48, Some(12_080_931)),
    (50, Some(34_639_665)),
    (52, Some(101_432_823)),
    (54, Some(196_808_595)),
    (56, Some(753_747_164)),
    (58, Some(1_851_547_682)),
];

/// Published backtrack count for `teams` under the given table, if any.
pub fn published(table: &[(u32, Option<u64>)], teams: u32) -> Option<u64> {
    table.iter().find(|&&(t, _)| t == teams).and_then(|&(_, bt)| bt)
}
