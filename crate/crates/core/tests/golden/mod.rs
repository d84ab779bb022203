// Transcribed from the worked example of repair matrices. Entries are
// written as in the source, with -1 for 2.

pub const S_A3: &[&[i64]] = &[&[0, 1, 0, -1], &[0, 0, 1, 1]];

pub const S_TILDE_A3: &[&[i64]] = &[&[1, 1, 1, 0], &[0, 0, 0, 1]];

pub const S_A4: &[&[i64]] = &[
    &[0, 1, 0, -1, 0, -1, 0, 0],
    &[0, 0, 1, 1, 0, 0, -1, 0],
    &[0, 0, 0, 0, 1, 1, 1, 0],
    &[0, 0, 0, 0, 0, 0, 0, 1],
];

pub const S_TILDE_A4: &[&[i64]] = &[
    &[1, 1, 1, 0, 1, 0, 0, 0],
    &[0, 0, 0, 1, 0, 0, 0, 1],
    &[0, 0, 0, 0, 0, 1, 0, -1],
    &[0, 0, 0, 0, 0, 0, 1, 1],
];

pub const S_A5: &[&[i64]] = &[
    &[0, 1, 0, -1, 0, -1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0],
    &[0, 0, 1, 1, 0, 0, -1, 0, 0, 0, -1, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, -1, 0, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, -1],
    &[0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 1, 0, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -1],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1],
];

pub const S_TILDE_A5: &[&[i64]] = &[
    &[1, 1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    &[0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 1, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0],
    &[0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -1, 0, -1, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, -1, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
];

pub const S_B3: &[&[i64]] = &[&[0, 1, 0, 1], &[0, 0, 1, -1]];

pub const S_TILDE_B3: &[&[i64]] = &[&[1, -1, -1, 0], &[0, 0, 0, 1]];

pub const S_B4: &[&[i64]] = &[
    &[0, 1, 0, 1, 0, 1, 0, 0],
    &[0, 0, 1, -1, 0, 0, 1, 0],
    &[0, 0, 0, 0, 1, -1, -1, 0],
    &[0, 0, 0, 0, 0, 0, 0, 1],
];

pub const S_TILDE_B4: &[&[i64]] = &[
    &[1, -1, -1, 0, -1, 0, 0, 0],
    &[0, 0, 0, 1, 0, 0, 0, -1],
    &[0, 0, 0, 0, 0, 1, 0, 1],
    &[0, 0, 0, 0, 0, 0, 1, -1],
];

pub const S_B5: &[&[i64]] = &[
    &[0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
    &[0, 0, 1, -1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, 1, -1, -1, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1],
    &[0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 0, -1, 0, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, -1],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1],
];

pub const S_TILDE_B5: &[&[i64]] = &[
    &[1, -1, -1, 0, -1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0],
    &[0, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, -1, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0],
    &[0, 0, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, 0, 0, -1, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, 0, 0, 1, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
];
