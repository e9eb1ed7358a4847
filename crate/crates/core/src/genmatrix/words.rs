use crate::ffalg::group::Word;

/// All positive words of length `1..=max_len`, shortest first, then
/// lexicographic.
pub fn words_up_to(n_gens: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..n_gens).map(move |g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Least cyclic rotation; `Λ_i` of a word depends only on this.
pub fn canonical_rotation(w: &[usize]) -> Word {
    (0..w.len().max(1))
        .map(|k| w[k..].iter().chain(&w[..k]).copied().collect::<Word>())
        .min()
        .unwrap_or_default()
}

pub fn render_word(w: &[usize], gens: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|&g| gens[g].as_str()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_rotation() {
        assert_eq!(words_up_to(2, 3).len(), 14);
        assert_eq!(canonical_rotation(&[1, 0, 0]), vec![0, 0, 1]);
        assert_eq!(render_word(&[0, 1], &["X".into(), "Y".into()]), "XY");
    }
}
