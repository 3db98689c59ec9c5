//! Single-file record store.
//!
//! The data file is a journal of newline-terminated JSON lines. The first
//! line is a schema header; every later line is one committed transaction
//! holding one or more record writes. A transaction is durable once its line
//! and trailing newline are synced. An unterminated final line is a torn
//! write and is discarded on open.
//!
//! Party names are XOR-encrypted before they reach the journal and decrypted
//! on read; see [`crate::crypto`]. Writes use optimistic versioning: every
//! put names the version it expects to replace (0 for a new record).

mod record;

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use record::{Record, RecordKind};

use crate::case::{AuditDraft, AuditEvent, CaseNumber, CaseStatus, DisputeId, LaborCase, OfficeId, OfficeLoads};
use crate::crypto::XorKey;

pub const SCHEMA_VERSION: u32 = 1;
const FORMAT: &str = "docketd-store";
pub const DATA_FILE: &str = "docket.journal";

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("version conflict on {kind:?} {id}: expected {expected}, found {actual}")]
    VersionConflict { kind: RecordKind, id: String, expected: u64, actual: u64 },
    #[error("{kind:?} {id} not found")]
    NotFound { kind: RecordKind, id: String },
    #[error("store corrupt: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A record as it sits in the journal, with sealed PII.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredRecord {
    pub kind: RecordKind,
    pub id: String,
    pub version: u64,
    pub payload: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Versioned<T> {
    pub version: u64,
    pub record: T,
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    schema: u32,
}

#[derive(Serialize, Deserialize)]
struct CommitLine {
    txn: u64,
    writes: Vec<StoredRecord>,
}

struct Put {
    kind: RecordKind,
    id: String,
    expected: u64,
    value: Value,
}

/// Writes that commit together or not at all.
#[derive(Default)]
pub struct Batch {
    puts: Vec<Put>,
    audits: Vec<AuditDraft>,
}

impl Batch {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put<R: Record>(&mut self, record: &R, expected_version: u64) -> &mut Self {
        let value = serde_json::to_value(record).expect("domain records serialize");
        self.puts.push(Put { kind: R::KIND, id: record.record_id(), expected: expected_version, value });
        self
    }

    pub fn audit(&mut self, draft: AuditDraft) -> &mut Self {
        self.audits.push(draft);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.puts.is_empty() && self.audits.is_empty()
    }
}

/// What a commit assigned: new versions in put order, audit seqs in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Receipt {
    pub versions: Vec<u64>,
    pub audit_seqs: Vec<u64>,
}

#[derive(Default)]
struct State {
    records: BTreeMap<(RecordKind, String), StoredRecord>,
    audit: Vec<AuditEvent>,
    txn: u64,
}

impl State {
    fn version(&self, kind: RecordKind, id: &str) -> u64 {
        self.records.get(&(kind, id.to_owned())).map_or(0, |r| r.version)
    }

    fn apply(&mut self, line: CommitLine) -> Result<(), StoreError> {
        if line.txn != self.txn + 1 {
            return Err(StoreError::Corrupt(format!("transaction {} follows {}", line.txn, self.txn)));
        }
        for write in line.writes {
            if write.kind == RecordKind::Audit {
                let event: AuditEvent = serde_json::from_value(write.payload)
                    .map_err(|e| StoreError::Corrupt(format!("audit payload: {e}")))?;
                if event.seq != self.audit.len() as u64 + 1 {
                    return Err(StoreError::Corrupt(format!("audit seq {} out of order", event.seq)));
                }
                self.audit.push(event);
                continue;
            }
            let current = self.version(write.kind, &write.id);
            if write.version != current + 1 {
                return Err(StoreError::Corrupt(format!(
                    "{:?} {} jumps from version {current} to {}",
                    write.kind, write.id, write.version
                )));
            }
            self.records.insert((write.kind, write.id.clone()), write);
        }
        self.txn = line.txn;
        Ok(())
    }
}

struct Journal {
    file: File,
    len: u64,
}

impl Journal {
    fn append(&mut self, line: &[u8]) -> io::Result<()> {
        let result = self.file.write_all(line).and_then(|()| self.file.sync_data());
        match result {
            Ok(()) => {
                self.len += line.len() as u64;
                Ok(())
            }
            Err(e) => {
                // roll back a partial line so later commits stay parseable
                let _ = self.file.set_len(self.len);
                Err(e)
            }
        }
    }
}

pub struct Store {
    key: XorKey,
    path: PathBuf,
    state: RwLock<State>,
    writer: Mutex<Journal>,
}

impl std::fmt::Debug for Store {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Store").field("path", &self.path).finish_non_exhaustive()
    }
}

impl Store {
    /// Opens (or creates) the journal at `path`, replaying committed
    /// transactions.
    pub fn open(path: impl AsRef<Path>, key: XorKey) -> Result<Self, StoreError> {
        let path = path.as_ref().to_path_buf();
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(e.into()),
        };
        let mut state = State::default();
        let mut good_len = 0usize;
        let mut lines = 0usize;
        while let Some(nl) = bytes[good_len..].iter().position(|&b| b == b'\n') {
            let line = &bytes[good_len..good_len + nl];
            if lines == 0 {
                let header: Header = serde_json::from_slice(line)
                    .map_err(|e| StoreError::Corrupt(format!("header: {e}")))?;
                if header.format != FORMAT || header.schema != SCHEMA_VERSION {
                    return Err(StoreError::Corrupt(format!(
                        "unsupported store {} schema {}",
                        header.format, header.schema
                    )));
                }
            } else {
                let commit: CommitLine = serde_json::from_slice(line)
                    .map_err(|e| StoreError::Corrupt(format!("line {}: {e}", lines + 1)))?;
                state.apply(commit)?;
            }
            good_len += nl + 1;
            lines += 1;
        }

        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent)?;
        }
        let file = OpenOptions::new().create(true).append(true).open(&path)?;
        // anything past the last newline is a torn write
        file.set_len(good_len as u64)?;
        let mut journal = Journal { file, len: good_len as u64 };
        if lines == 0 {
            let mut header = serde_json::to_vec(&Header { format: FORMAT.into(), schema: SCHEMA_VERSION })
                .expect("header serializes");
            header.push(b'\n');
            journal.append(&header)?;
        }
        Ok(Self { key, path, state: RwLock::new(state), writer: Mutex::new(journal) })
    }

    /// Opens `DATA_FILE` inside `dir`.
    pub fn open_dir(dir: impl AsRef<Path>, key: XorKey) -> Result<Self, StoreError> {
        Self::open(dir.as_ref().join(DATA_FILE), key)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn read(&self) -> std::sync::RwLockReadGuard<'_, State> {
        self.state.read().unwrap_or_else(|e| e.into_inner())
    }

    /// Validates every put against committed versions, then appends the
    /// whole batch as one journal line.
    pub fn commit(&self, batch: Batch) -> Result<Receipt, StoreError> {
        let mut journal = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        let (line, receipt) = {
            let state = self.read();
            let mut pending: HashMap<(RecordKind, String), u64> = HashMap::new();
            let mut receipt = Receipt::default();
            let mut writes = Vec::with_capacity(batch.puts.len() + batch.audits.len());
            for mut put in batch.puts {
                let slot = (put.kind, put.id.clone());
                let current =
                    pending.get(&slot).copied().unwrap_or_else(|| state.version(put.kind, &put.id));
                if put.expected != current {
                    return Err(StoreError::VersionConflict {
                        kind: put.kind,
                        id: put.id,
                        expected: put.expected,
                        actual: current,
                    });
                }
                pending.insert(slot, current + 1);
                receipt.versions.push(current + 1);
                record::seal(&mut put.value, &self.key);
                writes.push(StoredRecord {
                    kind: put.kind,
                    id: put.id,
                    version: current + 1,
                    payload: put.value,
                });
            }
            let first_seq = state.audit.len() as u64 + 1;
            for (i, draft) in batch.audits.into_iter().enumerate() {
                let seq = first_seq + i as u64;
                receipt.audit_seqs.push(seq);
                let event = draft.sequenced(seq);
                writes.push(StoredRecord {
                    kind: RecordKind::Audit,
                    id: seq.to_string(),
                    version: 1,
                    payload: serde_json::to_value(&event).expect("audit serializes"),
                });
            }
            (CommitLine { txn: state.txn + 1, writes }, receipt)
        };
        if line.writes.is_empty() {
            return Ok(receipt);
        }
        let mut bytes = serde_json::to_vec(&line).expect("commit serializes");
        bytes.push(b'\n');
        journal.append(&bytes)?;
        self.state.write().unwrap_or_else(|e| e.into_inner()).apply(line)?;
        Ok(receipt)
    }

    pub fn put<R: Record>(&self, record: &R, expected_version: u64) -> Result<u64, StoreError> {
        let mut batch = Batch::new();
        batch.put(record, expected_version);
        Ok(self.commit(batch)?.versions[0])
    }

    pub fn append_audit(&self, draft: AuditDraft) -> Result<u64, StoreError> {
        let mut batch = Batch::new();
        batch.audit(draft);
        Ok(self.commit(batch)?.audit_seqs[0])
    }

    pub fn try_get<R: Record>(&self, id: &str) -> Result<Option<Versioned<R>>, StoreError> {
        let state = self.read();
        state
            .records
            .get(&(R::KIND, id.to_owned()))
            .map(|stored| {
                Ok(Versioned { version: stored.version, record: record::unseal(&stored.payload, &self.key)? })
            })
            .transpose()
    }

    pub fn get<R: Record>(&self, id: &str) -> Result<Versioned<R>, StoreError> {
        self.try_get(id)?.ok_or_else(|| StoreError::NotFound { kind: R::KIND, id: id.to_owned() })
    }

    /// Every record of one kind, ordered by id.
    pub fn list<R: Record>(&self) -> Result<Vec<Versioned<R>>, StoreError> {
        let state = self.read();
        state
            .records
            .range((R::KIND, String::new())..)
            .take_while(|((kind, _), _)| *kind == R::KIND)
            .map(|(_, stored)| {
                Ok(Versioned { version: stored.version, record: record::unseal(&stored.payload, &self.key)? })
            })
            .collect()
    }

    /// Unseals only the cases whose plaintext header passes `keep`.
    fn cases_where(&self, keep: impl Fn(&CaseHead) -> bool) -> Result<Vec<Versioned<LaborCase>>, StoreError> {
        let state = self.read();
        let mut out = Vec::new();
        for stored in Self::case_records(&state) {
            if keep(&CaseHead::of(stored)?) {
                out.push(Versioned { version: stored.version, record: record::unseal(&stored.payload, &self.key)? });
            }
        }
        Ok(out)
    }

    fn case_records(state: &State) -> impl Iterator<Item = &StoredRecord> {
        state
            .records
            .range((RecordKind::Case, String::new())..)
            .take_while(|((kind, _), _)| *kind == RecordKind::Case)
            .map(|(_, stored)| stored)
    }

    /// Cases currently sitting at `office`.
    pub fn query_by_office(&self, office: OfficeId) -> Result<Vec<Versioned<LaborCase>>, StoreError> {
        let mut cases = self.cases_where(|h| h.office_id == office)?;
        cases.sort_by_key(|c| c.record.case_number);
        Ok(cases)
    }

    pub fn query_by_case_number(&self, number: &CaseNumber) -> Result<Versioned<LaborCase>, StoreError> {
        self.get(&number.to_string())
    }

    /// The labor case docketed from `dispute`, if any.
    pub fn query_by_dispute(&self, dispute: DisputeId) -> Result<Option<Versioned<LaborCase>>, StoreError> {
        Ok(self.cases_where(|h| h.dispute_id == dispute)?.pop())
    }

    pub fn audit_log(&self) -> Vec<AuditEvent> {
        self.read().audit.clone()
    }

    /// Next free docket sequence for a (two- or four-digit) year.
    pub fn next_case_sequence(&self, year: i32) -> Result<u32, StoreError> {
        let yy = year.rem_euclid(100) as u32;
        let state = self.read();
        let mut max = 0;
        for stored in Self::case_records(&state) {
            let number: CaseNumber =
                stored.id.parse().map_err(|e| StoreError::Corrupt(format!("case id {}: {e}", stored.id)))?;
            if number.year() == yy {
                max = max.max(number.sequence());
            }
        }
        Ok(max + 1)
    }

    pub fn open_loads(&self) -> Result<OfficeLoads, StoreError> {
        let state = self.read();
        let mut loads = OfficeLoads::new();
        for stored in Self::case_records(&state) {
            let head = CaseHead::of(stored)?;
            if head.status.is_open() {
                *loads.entry(head.office_id).or_default() += 1;
            }
        }
        Ok(loads)
    }
}

/// The unencrypted fields of a stored case, read without unsealing names.
#[derive(Deserialize)]
struct CaseHead {
    dispute_id: DisputeId,
    office_id: OfficeId,
    status: CaseStatus,
}

impl CaseHead {
    fn of(stored: &StoredRecord) -> Result<Self, StoreError> {
        CaseHead::deserialize(&stored.payload)
            .map_err(|e| StoreError::Corrupt(format!("case {}: {e}", stored.id)))
    }
}
