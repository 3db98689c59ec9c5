use super::CryptoError;

/// Keeps the first character of every whitespace-separated word and stars
/// out the rest. Whitespace is preserved as given.
pub fn mask_name(name: &str) -> Result<String, CryptoError> {
    if name.trim().is_empty() {
        return Err(CryptoError::EmptyName);
    }
    let mut masked = String::with_capacity(name.len());
    let mut word_start = true;
    for ch in name.chars() {
        if ch.is_whitespace() {
            masked.push(ch);
            word_start = true;
        } else if word_start {
            masked.push(ch);
            word_start = false;
        } else {
            masked.push('*');
        }
    }
    Ok(masked)
}
