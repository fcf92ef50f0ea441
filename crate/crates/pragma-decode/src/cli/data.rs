//! Dataset file formats: items and corpus as JSONL, clusters as JSON lists
//! of item ids, plus the content hash embedded in reports.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::core::Item;
use crate::error::{Error, Result};
use crate::eval::Cluster;

#[derive(Debug, Serialize, Deserialize)]
struct CorpusLine {
    item_id: String,
    caption: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct ClusterFile {
    id: String,
    item_ids: Vec<String>,
}

/// One JSON object per line: `{"id": ..., "attributes": {...}}`.
pub fn items_jsonl(items: &[Item]) -> Result<String> {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_items_jsonl(text: &str) -> Result<Vec<Item>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| Ok(serde_json::from_str(l)?))
        .collect()
}

/// One JSON object per line: `{"item_id": ..., "caption": ...}`.
pub fn corpus_jsonl(corpus: &[(Item, String)]) -> Result<String> {
    let mut out = String::new();
    for (item, caption) in corpus {
        out.push_str(&serde_json::to_string(&CorpusLine {
            item_id: item.id.clone(),
            caption: caption.clone(),
        })?);
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_corpus_jsonl(text: &str, items: &[Item]) -> Result<Vec<(Item, String)>> {
    let by_id: HashMap<&str, &Item> = items.iter().map(|i| (i.id.as_str(), i)).collect();
    let mut corpus = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let parsed: CorpusLine = serde_json::from_str(line)?;
        let item = by_id
            .get(parsed.item_id.as_str())
            .ok_or_else(|| Error::UnknownItem(parsed.item_id.clone()))?;
        corpus.push(((*item).clone(), parsed.caption));
    }
    Ok(corpus)
}

/// Pretty JSON array of `{"id": ..., "item_ids": [...]}` entries.
pub fn clusters_json(clusters: &[Cluster]) -> Result<String> {
    let files: Vec<ClusterFile> = clusters
        .iter()
        .map(|c| ClusterFile {
            id: c.id().to_string(),
            item_ids: c.items().iter().map(|i| i.id.clone()).collect(),
        })
        .collect();
    Ok(serde_json::to_string_pretty(&files)?)
}

pub fn parse_clusters_json(text: &str, items: &[Item]) -> Result<Vec<Cluster>> {
    let by_id: HashMap<&str, &Item> = items.iter().map(|i| (i.id.as_str(), i)).collect();
    let files: Vec<ClusterFile> = serde_json::from_str(text)?;
    files
        .into_iter()
        .map(|f| {
            let members: Result<Vec<Item>> = f
                .item_ids
                .iter()
                .map(|id| {
                    by_id
                        .get(id.as_str())
                        .map(|i| (*i).clone())
                        .ok_or_else(|| Error::UnknownItem(id.clone()))
                })
                .collect();
            Cluster::new(f.id, members?)
        })
        .collect()
}

/// 64-bit FNV-1a content hash, hex encoded. Stable across platforms; used
/// for the dataset audit trail in reports, not for security.
pub fn content_hash(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

pub fn write_file(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, content)?;
    Ok(())
}
