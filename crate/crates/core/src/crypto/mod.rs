//! Privacy primitives: the repeating-key XOR cipher used for party names at
//! rest, salted password digests, and display masking for public output.
//!
//! The XOR cipher is a faithful reproduction of a weak scheme. It keeps names
//! unreadable in the data file; it is not a substitute for real encryption.

mod mask;
mod password;
mod xor;

pub use mask::mask_name;
pub use password::{
    dummy_verify, hash_password, verify_password, PasswordDigest, ENCODED_LEN, ITERATIONS,
    MIN_PASSWORD_LEN,
};
pub use xor::{decrypt_hex, decrypt_name, encrypt_name, xor_transform, CipherText, XorKey};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CryptoError {
    #[error("encryption key must not be empty")]
    EmptyKey,
    #[error("ciphertext is not lowercase hex of even length")]
    MalformedHex,
    #[error("decrypted bytes are not valid UTF-8")]
    NotUtf8,
    #[error("password must be at least {min} characters")]
    PasswordTooShort { min: usize },
    #[error("malformed password digest")]
    MalformedDigest,
    #[error("name must not be empty")]
    EmptyName,
}
