/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-trial seed: each field is absorbed in turn as
/// `h = mix64(h ^ mix64(field + GOLDEN))`, starting from `h = master`.
pub fn trial_seed(master: u64, n: usize, trial: u64, tag: &str) -> u64 {
    const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
    let tag_hash = tag.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    [n as u64, trial, tag_hash]
        .into_iter()
        .fold(master, |h, field| {
            mix64(h ^ mix64(field.wrapping_add(GOLDEN)))
        })
}
