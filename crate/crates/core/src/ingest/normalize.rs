//! Plain-token normalization.
//!
//! Integers are spelled as English cardinals with spaces between words, no
//! "and" and no hyphens: `250` becomes `two hundred fifty`, `21` becomes
//! `twenty one`. Digit strings too long for a `u64` are spelled digit by digit.

const ONES: [&str; 20] = [
    "zero",
    "one",
    "two",
    "three",
    "four",
    "five",
    "six",
    "seven",
    "eight",
    "nine",
    "ten",
    "eleven",
    "twelve",
    "thirteen",
    "fourteen",
    "fifteen",
    "sixteen",
    "seventeen",
    "eighteen",
    "nineteen",
];

const TENS: [&str; 10] = [
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
];

const SCALES: [&str; 7] = [
    "",
    "thousand",
    "million",
    "billion",
    "trillion",
    "quadrillion",
    "quintillion",
];

fn push_below_thousand(n: u64, out: &mut Vec<&'static str>) {
    debug_assert!(n < 1000);
    let hundreds = n / 100;
    let rest = n % 100;
    if hundreds > 0 {
        out.push(ONES[hundreds as usize]);
        out.push("hundred");
    }
    if rest >= 20 {
        out.push(TENS[(rest / 10) as usize]);
        if rest % 10 > 0 {
            out.push(ONES[(rest % 10) as usize]);
        }
    } else if rest > 0 {
        out.push(ONES[rest as usize]);
    }
}

/// English cardinal for `n`, words separated by single spaces.
pub fn integer_to_words(n: u64) -> String {
    if n == 0 {
        return ONES[0].to_string();
    }
    let mut groups = Vec::new();
    let mut rest = n;
    while rest > 0 {
        groups.push(rest % 1000);
        rest /= 1000;
    }
    let mut words = Vec::new();
    for (scale, &g) in groups.iter().enumerate().rev() {
        if g == 0 {
            continue;
        }
        push_below_thousand(g, &mut words);
        if scale > 0 {
            words.push(SCALES[scale]);
        }
    }
    words.join(" ")
}

fn digits_to_words(digits: &str) -> String {
    match digits.parse::<u64>() {
        Ok(n) => integer_to_words(n),
        Err(_) => digits
            .bytes()
            .map(|b| ONES[(b - b'0') as usize])
            .collect::<Vec<_>>()
            .join(" "),
    }
}

/// Normalizes one whitespace-delimited raw token: drop if it has any non-ASCII
/// byte, lowercase, strip ASCII punctuation, spell out integers. `None` when
/// nothing is left. A spelled-out integer may contain spaces; callers split it
/// into separate tokens.
pub fn normalize_plain_token(raw: &str) -> Option<String> {
    if !raw.is_ascii() {
        return None;
    }
    let cleaned: String = raw
        .chars()
        .filter(|c| !c.is_ascii_punctuation() && !c.is_ascii_whitespace())
        .map(|c| c.to_ascii_lowercase())
        .collect();
    if cleaned.is_empty() {
        return None;
    }
    if cleaned.bytes().all(|b| b.is_ascii_digit()) {
        return Some(digits_to_words(&cleaned));
    }
    Some(cleaned)
}

/// Splits raw text on whitespace and normalizes every piece into `out`.
pub fn push_normalized_tokens(text: &str, out: &mut Vec<String>) {
    for raw in text.split_whitespace() {
        if let Some(norm) = normalize_plain_token(raw) {
            if norm.contains(' ') {
                out.extend(norm.split(' ').map(str::to_string));
            } else {
                out.push(norm);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent reader for the cardinal convention above.
    fn words_to_integer(s: &str) -> u64 {
        let mut total = 0u64;
        let mut group = 0u64;
        for w in s.split(' ') {
            if let Some(v) = ONES.iter().position(|&o| o == w) {
                group += v as u64;
            } else if let Some(v) = TENS.iter().position(|&t| t == w && !t.is_empty()) {
                group += 10 * v as u64;
            } else if w == "hundred" {
                group *= 100;
            } else if let Some(p) = SCALES.iter().position(|&t| t == w && !t.is_empty()) {
                total += group * 1000u64.pow(p as u32);
                group = 0;
            } else {
                panic!("unknown word {w}");
            }
        }
        total + group
    }

    #[test]
    fn examples() {
        assert_eq!(normalize_plain_token("In").as_deref(), Some("in"));
        assert_eq!(normalize_plain_token("function.").as_deref(), Some("function"));
        assert_eq!(
            normalize_plain_token("250").as_deref(),
            Some("two hundred fifty")
        );
        assert_eq!(normalize_plain_token("(21)").as_deref(), Some("twenty one"));
        assert_eq!(normalize_plain_token("NF-kappaB").as_deref(), Some("nfkappab"));
        assert_eq!(normalize_plain_token("..."), None);
        assert_eq!(normalize_plain_token("\u{3b1}-helix"), None);
        assert_eq!(normalize_plain_token("007").as_deref(), Some("seven"));
    }

    #[test]
    fn round_trip_zero_to_thousand() {
        for n in 0..=1000u64 {
            let w = integer_to_words(n);
            assert!(!w.contains('-') && !w.contains(" and "), "{w}");
            assert_eq!(words_to_integer(&w), n, "{w}");
        }
    }

    #[test]
    fn large_values() {
        assert_eq!(integer_to_words(1_000_001), "one million one");
        assert_eq!(words_to_integer(&integer_to_words(u64::MAX)), u64::MAX);
        assert_eq!(
            normalize_plain_token("123456789012345678901234").unwrap(),
            "one two three four five six seven eight nine zero one two three four five six seven eight nine zero one two three four"
        );
    }

    #[test]
    fn splitting() {
        let mut out = Vec::new();
        push_normalized_tokens("Has 4 sites, each.", &mut out);
        assert_eq!(out, ["has", "four", "sites", "each"]);
    }
}
