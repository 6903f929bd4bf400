use super::CodecError;

/// Differences between successive sorted document numbers; the first gap is
/// the first number itself. Every gap is at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapList(Vec<u64>);

impl GapList {
    pub fn new(gaps: Vec<u64>) -> Result<Self, CodecError> {
        if let Some(i) = gaps.iter().position(|&g| g == 0) {
            return Err(CodecError::ZeroGap(i));
        }
        Ok(GapList(gaps))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }
}

pub fn dgap_encode(docids: &[u64]) -> Result<GapList, CodecError> {
    let Some(&first) = docids.first() else {
        return Err(CodecError::Empty);
    };
    if first == 0 {
        return Err(CodecError::Zero);
    }
    let mut gaps = Vec::with_capacity(docids.len());
    gaps.push(first);
    for (i, w) in docids.windows(2).enumerate() {
        if w[1] <= w[0] {
            return Err(CodecError::NotIncreasing(i + 1));
        }
        gaps.push(w[1] - w[0]);
    }
    Ok(GapList(gaps))
}

pub fn dgap_decode(gaps: &GapList) -> Result<Vec<u64>, CodecError> {
    let mut acc = 0u64;
    gaps.0
        .iter()
        .map(|&g| {
            acc = acc.checked_add(g).ok_or(CodecError::Overflow)?;
            Ok(acc)
        })
        .collect()
}
