use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CryptoError;

/// Key for the repeating-key XOR cipher. Never serialized, and redacted in
/// `Debug` output.
#[derive(Clone, PartialEq, Eq)]
pub struct XorKey(Vec<u8>);

impl XorKey {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self, CryptoError> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(CryptoError::EmptyKey);
        }
        Ok(Self(bytes))
    }

    pub fn from_hex(hex_key: &str) -> Result<Self, CryptoError> {
        let bytes = hex::decode(hex_key.trim()).map_err(|_| CryptoError::MalformedHex)?;
        Self::new(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Debug for XorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XorKey(<{} bytes>)", self.0.len())
    }
}

/// XORs each byte with the key byte at the same position modulo key length.
/// Applying it twice with the same key returns the input.
pub fn xor_transform(data: &[u8], key: &XorKey) -> Vec<u8> {
    data.iter().zip(key.0.iter().cycle()).map(|(d, k)| d ^ k).collect()
}

/// Lowercase hex of XOR output.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CipherText(String);

impl CipherText {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for CipherText {
    type Err = CryptoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let well_formed =
            s.len() % 2 == 0 && s.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'));
        if !well_formed {
            return Err(CryptoError::MalformedHex);
        }
        Ok(CipherText(s.to_owned()))
    }
}

impl TryFrom<String> for CipherText {
    type Error = CryptoError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<CipherText> for String {
    fn from(c: CipherText) -> Self {
        c.0
    }
}

impl fmt::Display for CipherText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn encrypt_name(name: &str, key: &XorKey) -> CipherText {
    CipherText(hex::encode(xor_transform(name.as_bytes(), key)))
}

pub fn decrypt_name(cipher: &CipherText, key: &XorKey) -> Result<String, CryptoError> {
    let bytes = hex::decode(&cipher.0).map_err(|_| CryptoError::MalformedHex)?;
    String::from_utf8(xor_transform(&bytes, key)).map_err(|_| CryptoError::NotUtf8)
}

/// Parses `hex` and decrypts it in one step.
pub fn decrypt_hex(hex_text: &str, key: &XorKey) -> Result<String, CryptoError> {
    decrypt_name(&hex_text.parse()?, key)
}
