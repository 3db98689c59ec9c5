use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::StoreError;
use crate::access::UserAccount;
use crate::case::{Complaint, LaborCase, SenaCase};
use crate::crypto::{decrypt_hex, encrypt_name, XorKey};

/// Object key whose string values are stored as XOR ciphertext.
pub(crate) const SEALED_FIELD: &str = "full_name";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    Complaint,
    Sena,
    Case,
    User,
    Audit,
}

/// A domain object the store knows how to file.
pub trait Record: Serialize + DeserializeOwned {
    const KIND: RecordKind;

    fn record_id(&self) -> String;
}

impl Record for Complaint {
    const KIND: RecordKind = RecordKind::Complaint;

    fn record_id(&self) -> String {
        self.dispute_id.to_string()
    }
}

impl Record for SenaCase {
    const KIND: RecordKind = RecordKind::Sena;

    fn record_id(&self) -> String {
        self.dispute_id.to_string()
    }
}

impl Record for LaborCase {
    const KIND: RecordKind = RecordKind::Case;

    fn record_id(&self) -> String {
        self.case_number.to_string()
    }
}

impl Record for UserAccount {
    const KIND: RecordKind = RecordKind::User;

    fn record_id(&self) -> String {
        self.username.to_string()
    }
}

/// Encrypts every sealed field of a serialized record in place.
pub(crate) fn seal(value: &mut Value, key: &XorKey) {
    walk(value, &mut |s| {
        *s = encrypt_name(s, key).into();
        Ok(())
    })
    .expect("encryption is infallible");
}

pub(crate) fn unseal<R: Record>(payload: &Value, key: &XorKey) -> Result<R, StoreError> {
    let mut value = payload.clone();
    walk(&mut value, &mut |s| {
        *s = decrypt_hex(s, key).map_err(|e| StoreError::Corrupt(format!("{SEALED_FIELD}: {e}")))?;
        Ok(())
    })?;
    serde_json::from_value(value).map_err(|e| StoreError::Corrupt(e.to_string()))
}

fn walk(
    value: &mut Value,
    f: &mut dyn FnMut(&mut String) -> Result<(), StoreError>,
) -> Result<(), StoreError> {
    match value {
        Value::Object(map) => {
            for (k, v) in map.iter_mut() {
                match v {
                    Value::String(s) if k == SEALED_FIELD => f(s)?,
                    other => walk(other, f)?,
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                walk(v, f)?;
            }
        }
        _ => {}
    }
    Ok(())
}
