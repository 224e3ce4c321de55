//! On-disk JSON artifacts. Each file is named after the knot, the artifact
//! and its size parameters; the stored key also records the mirror
//! convention, and a SHA-256 of the payload guards against corruption. A file
//! that disagrees with what is being stored or expected is an error, never
//! overwritten.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use jones_asymptotics::MirrorConvention;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{io_err, CliError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub knot: String,
    pub artifact: String,
    pub convention: MirrorConvention,
    pub params: BTreeMap<String, usize>,
}

impl CacheKey {
    pub fn new(knot: &str, artifact: &str, convention: MirrorConvention, params: &[(&str, usize)]) -> Self {
        Self {
            knot: knot.to_string(),
            artifact: artifact.to_string(),
            convention,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    fn file_name(&self) -> String {
        let mut s = self.artifact.clone();
        for (k, v) in &self.params {
            s.push_str(&format!("-{k}{v}"));
        }
        s + ".json"
    }
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    key: CacheKey,
    sha256: String,
    payload: Value,
}

pub fn content_hash(payload: &Value) -> String {
    let bytes = serde_json::to_vec(payload).expect("JSON values serialize");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(&key.knot).join(key.file_name())
    }

    pub fn knot_dir(&self, knot: &str) -> PathBuf {
        self.dir.join(knot)
    }

    /// The cached payload, if present and consistent with `key`.
    pub fn load<T: DeserializeOwned>(&self, key: &CacheKey) -> Result<Option<T>, CliError> {
        let path = self.path(key);
        let Some(payload) = self.load_value(key, &path)? else {
            return Ok(None);
        };
        serde_json::from_value(payload)
            .map(Some)
            .map_err(|e| mismatch(&path, format!("payload does not decode: {e}")))
    }

    fn load_value(&self, key: &CacheKey, path: &Path) -> Result<Option<Value>, CliError> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(path, e)),
        };
        let env: Envelope = serde_json::from_str(&text).map_err(|e| mismatch(path, format!("unreadable: {e}")))?;
        if content_hash(&env.payload) != env.sha256 {
            return Err(mismatch(path, "content hash does not match the payload".into()));
        }
        if env.key != *key {
            return Err(mismatch(path, describe_key_change(&env.key, key)));
        }
        Ok(Some(env.payload))
    }

    /// Writes `value` under `key`, or checks it against an existing file.
    pub fn store<T: Serialize>(&self, key: &CacheKey, value: &T) -> Result<PathBuf, CliError> {
        let path = self.path(key);
        let payload = serde_json::to_value(value).map_err(|e| CliError::Io(e.to_string()))?;
        if let Some(existing) = self.load_value(key, &path)? {
            if existing != payload {
                return Err(mismatch(&path, "recomputed artifact differs from the cached one".into()));
            }
            return Ok(path);
        }
        let env = Envelope {
            key: key.clone(),
            sha256: content_hash(&payload),
            payload,
        };
        let dir = path.parent().expect("cache paths have a parent");
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let tmp = path.with_extension("json.tmp");
        let text = serde_json::to_string_pretty(&env).expect("envelopes serialize") + "\n";
        fs::write(&tmp, text).map_err(|e| io_err(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| io_err(&path, e))?;
        Ok(path)
    }
}

fn mismatch(path: &Path, reason: String) -> CliError {
    CliError::CacheMismatch {
        path: path.to_path_buf(),
        reason,
    }
}

fn describe_key_change(found: &CacheKey, wanted: &CacheKey) -> String {
    if found.convention != wanted.convention {
        format!(
            "cache was built with mirror convention {:?}, run asks for {:?}",
            found.convention, wanted.convention
        )
    } else {
        format!("stored key {found:?} differs from requested {wanted:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(conv: MirrorConvention) -> CacheKey {
        CacheKey::new("3_1", "jones", conv, &[("n", 4)])
    }

    #[test]
    fn round_trip_and_idempotent_store() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let k = key(MirrorConvention::Standard);
        assert_eq!(cache.load::<Vec<i32>>(&k).unwrap(), None);
        let p = cache.store(&k, &vec![1, 2, 3]).unwrap();
        assert!(p.ends_with("3_1/jones-n4.json"));
        cache.store(&k, &vec![1, 2, 3]).unwrap();
        assert_eq!(cache.load::<Vec<i32>>(&k).unwrap(), Some(vec![1, 2, 3]));
        assert!(matches!(cache.store(&k, &vec![1, 2, 4]), Err(CliError::CacheMismatch { .. })));
    }

    #[test]
    fn convention_change_is_a_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        cache.store(&key(MirrorConvention::Standard), &1).unwrap();
        let err = cache.load::<i32>(&key(MirrorConvention::Mirrored)).unwrap_err();
        assert!(err.to_string().contains("mirror convention"), "{err}");
    }

    #[test]
    fn tampered_payload_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let k = key(MirrorConvention::Standard);
        let p = cache.store(&k, &vec![5, 6]).unwrap();
        let mut env: Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
        env["payload"][1] = Value::from(7);
        fs::write(&p, env.to_string()).unwrap();
        let err = cache.load::<Vec<i32>>(&k).unwrap_err();
        assert!(err.to_string().contains("hash"), "{err}");
    }
}
