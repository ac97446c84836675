use std::collections::BTreeSet;

/// One step of the greedy segmenter: was `candidate` a word?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub candidate: String,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SegmentationResult {
    pub words: Vec<String>,
    /// Letters after the last accepted word.
    pub residue: String,
    pub decisions: Vec<Decision>,
}

/// Shortest-first greedy: grow the current candidate one letter at a time
/// and accept it the moment it is a dictionary word. Input is lowercased.
pub fn greedy_segment(text: &str, dictionary: &BTreeSet<String>) -> SegmentationResult {
    let mut result = SegmentationResult::default();
    let mut current = String::new();
    for c in text.chars() {
        current.push(c.to_ascii_lowercase());
        let accepted = dictionary.contains(&current);
        result.decisions.push(Decision {
            candidate: current.clone(),
            accepted,
        });
        if accepted {
            result.words.push(std::mem::take(&mut current));
        }
    }
    result.residue = current;
    result
}

/// Full segmentations of a text.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DpSegmentation {
    /// Number of full segmentations, saturating at `u128::MAX`.
    pub count: u128,
    /// Up to the requested number of parses, in lexicographic order of word lengths (shortest first).
    pub parses: Vec<Vec<String>>,
    /// Text after the longest prefix that can be fully segmented.
    pub residue: String,
}

impl DpSegmentation {
    pub fn witness(&self) -> Option<&[String]> {
        self.parses.first().map(Vec::as_slice)
    }
}

/// Counts every way to split `text` into dictionary words and lists up to
/// `limit` of them.
pub fn dp_segment(text: &str, dictionary: &BTreeSet<String>, limit: usize) -> DpSegmentation {
    let text = text.to_ascii_lowercase();
    let n = text.len();
    let max_word = dictionary.iter().map(String::len).max().unwrap_or(0);
    let is_word = |i: usize, j: usize| text.get(i..j).is_some_and(|w| dictionary.contains(w));
    // ways[i]: segmentations of text[i..]
    let mut ways = vec![0u128; n + 1];
    ways[n] = 1;
    for i in (0..n).rev() {
        ways[i] = (i + 1..=n.min(i + max_word))
            .filter(|&j| is_word(i, j))
            .fold(0u128, |acc, j| acc.saturating_add(ways[j]));
    }
    // reach[j]: text[..j] is fully segmentable
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for j in 1..=n {
        reach[j] = (j.saturating_sub(max_word)..j).any(|i| reach[i] && is_word(i, j));
    }
    let longest = (0..=n).rev().find(|&j| reach[j]).unwrap_or(0);

    let mut parses = Vec::new();
    let mut stack: Vec<String> = Vec::new();
    collect(
        &text,
        0,
        dictionary,
        max_word,
        &ways,
        limit,
        &mut stack,
        &mut parses,
    );
    DpSegmentation {
        count: ways[0],
        parses,
        residue: text[longest..].to_string(),
    }
}

#[allow(clippy::too_many_arguments)]
fn collect(
    text: &str,
    i: usize,
    dictionary: &BTreeSet<String>,
    max_word: usize,
    ways: &[u128],
    limit: usize,
    stack: &mut Vec<String>,
    out: &mut Vec<Vec<String>>,
) {
    if out.len() >= limit {
        return;
    }
    if i == text.len() {
        out.push(stack.clone());
        return;
    }
    for j in i + 1..=text.len().min(i + max_word) {
        match text.get(i..j) {
            Some(w) if ways[j] > 0 && dictionary.contains(w) => {
                stack.push(w.to_string());
                collect(text, j, dictionary, max_word, ways, limit, stack, out);
                stack.pop();
            }
            _ => {}
        }
    }
}
