use crate::bitio::{self, BitString};

/// Which bytes get their bit order reversed: indices `start`,
/// `start + jump + 1`, `start + 2(jump + 1)`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BoustroParams {
    pub start: usize,
    pub jump: usize,
}

impl BoustroParams {
    fn selects(&self, i: usize) -> bool {
        i >= self.start && (i - self.start).is_multiple_of(self.jump + 1)
    }
}

/// Reverses the bits of the selected bytes. Self-inverse.
pub fn boustrophedon(data: &[u8], p: BoustroParams) -> Vec<u8> {
    data.iter()
        .enumerate()
        .map(|(i, &b)| {
            if p.selects(i) {
                bitio::reverse_byte_bits(b)
            } else {
                b
            }
        })
        .collect()
}

/// [`boustrophedon`] over the complete bytes of a bit string; a trailing
/// partial byte is left alone.
pub fn boustrophedon_bits(bits: &BitString, p: BoustroParams) -> BitString {
    let (bytes, rest) = bitio::group(bits, 8);
    let mut out = BitString::with_capacity(bits.len());
    for (i, byte) in bytes.iter().enumerate() {
        if p.selects(i) {
            out.extend_from(&byte.reversed());
        } else {
            out.extend_from(byte);
        }
    }
    out.extend_from(&rest);
    out
}
