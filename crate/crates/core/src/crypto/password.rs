use std::fmt;
use std::str::FromStr;

use base64::engine::general_purpose::URL_SAFE_NO_PAD;
use base64::Engine as _;
use rand::RngCore;
use serde::{Deserialize, Serialize};
use sha2::Sha256;
use subtle::ConstantTimeEq;

use super::CryptoError;

/// Identifies PBKDF2-HMAC-SHA256 at [`ITERATIONS`] rounds.
const TAG: &str = "$pb$";
pub const ITERATIONS: u32 = 60_000;
const SALT_LEN: usize = 12;
const HASH_LEN: usize = 32;
pub const MIN_PASSWORD_LEN: usize = 8;

/// `TAG ‖ b64(salt) ‖ '$' ‖ b64(hash)`: 4 + 16 + 1 + 43 characters.
pub const ENCODED_LEN: usize = 64;

/// A salted, one-way password digest in its storable text form.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PasswordDigest(String);

struct Parts {
    salt: [u8; SALT_LEN],
    hash: [u8; HASH_LEN],
}

impl PasswordDigest {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn encode(salt: &[u8; SALT_LEN], hash: &[u8; HASH_LEN]) -> Self {
        let s = format!("{TAG}{}${}", URL_SAFE_NO_PAD.encode(salt), URL_SAFE_NO_PAD.encode(hash));
        debug_assert_eq!(s.len(), ENCODED_LEN);
        PasswordDigest(s)
    }

    fn parts(&self) -> Result<Parts, CryptoError> {
        parse_parts(&self.0)
    }
}

fn parse_parts(s: &str) -> Result<Parts, CryptoError> {
    if s.len() != ENCODED_LEN {
        return Err(CryptoError::MalformedDigest);
    }
    let body = s.strip_prefix(TAG).ok_or(CryptoError::MalformedDigest)?;
    let (salt_b64, hash_b64) = body.split_once('$').ok_or(CryptoError::MalformedDigest)?;
    let decode = |text: &str, out: &mut [u8]| -> Result<(), CryptoError> {
        let bytes = URL_SAFE_NO_PAD.decode(text).map_err(|_| CryptoError::MalformedDigest)?;
        if bytes.len() != out.len() {
            return Err(CryptoError::MalformedDigest);
        }
        out.copy_from_slice(&bytes);
        Ok(())
    };
    let mut parts = Parts { salt: [0; SALT_LEN], hash: [0; HASH_LEN] };
    decode(salt_b64, &mut parts.salt)?;
    decode(hash_b64, &mut parts.hash)?;
    Ok(parts)
}

impl FromStr for PasswordDigest {
    type Err = CryptoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_parts(s)?;
        Ok(PasswordDigest(s.to_owned()))
    }
}

impl TryFrom<String> for PasswordDigest {
    type Error = CryptoError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<PasswordDigest> for String {
    fn from(d: PasswordDigest) -> Self {
        d.0
    }
}

impl fmt::Debug for PasswordDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PasswordDigest(..)")
    }
}

fn derive(password: &str, salt: &[u8; SALT_LEN]) -> [u8; HASH_LEN] {
    let mut out = [0u8; HASH_LEN];
    pbkdf2::pbkdf2_hmac::<Sha256>(password.as_bytes(), salt, ITERATIONS, &mut out);
    out
}

/// Hashes with a fresh random salt, so equal passwords give unequal digests.
pub fn hash_password(password: &str) -> Result<PasswordDigest, CryptoError> {
    if password.chars().count() < MIN_PASSWORD_LEN {
        return Err(CryptoError::PasswordTooShort { min: MIN_PASSWORD_LEN });
    }
    let mut salt = [0u8; SALT_LEN];
    rand::rng().fill_bytes(&mut salt);
    Ok(PasswordDigest::encode(&salt, &derive(password, &salt)))
}

/// Recomputes the digest under the stored salt and compares in constant time.
pub fn verify_password(password: &str, digest: &PasswordDigest) -> Result<bool, CryptoError> {
    let parts = digest.parts()?;
    let candidate = derive(password, &parts.salt);
    Ok(candidate.ct_eq(&parts.hash).into())
}

/// Burns the same work as a real verification. Used when the account does
/// not exist so that response timing does not reveal it.
pub fn dummy_verify(password: &str) {
    let _ = derive(password, &[0u8; SALT_LEN]);
}
