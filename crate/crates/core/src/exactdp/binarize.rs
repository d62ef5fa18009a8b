/// Step sizes whose 0/1 combinations cover exactly `0..=cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySplit {
    pub cap: i64,
    pub steps: Vec<i64>,
}

/// 1, 2, 4, ..., 2^(p-1) and the remainder cap - (2^p - 1) when positive,
/// with p = ⌊log₂(cap + 1)⌋.
pub fn binarize_range(cap: i64) -> BinarySplit {
    assert!(cap >= 0, "negative range cap");
    let mut steps = Vec::new();
    let mut power = 1i64;
    let mut covered = 0i64;
    while covered + power <= cap {
        steps.push(power);
        covered += power;
        power *= 2;
    }
    if cap > covered {
        steps.push(cap - covered);
    }
    BinarySplit { cap, steps }
}
