/// Adds `k` modulo 10 to every decimal digit; other characters are kept.
pub fn digit_shift(text: &str, k: u32) -> String {
    text.chars()
        .map(|c| match c.to_digit(10) {
            Some(d) => char::from_digit((d + k) % 10, 10).expect("digit"),
            None => c,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(digit_shift("1234", 1), "2345");
        assert_eq!(digit_shift("9", 1), "0");
        assert_eq!(digit_shift("$19.99", 3), "$42.22");
        assert_eq!(digit_shift("", 7), "");
    }

    proptest! {
        #[test]
        fn shift_back_restores(s in "[0-9a-z .,-]{0,80}", k in 0u32..=9) {
            let shifted = digit_shift(&s, k);
            prop_assert_eq!(shifted.chars().count(), s.chars().count());
            prop_assert_eq!(digit_shift(&shifted, 10 - k), s);
        }
    }
}
