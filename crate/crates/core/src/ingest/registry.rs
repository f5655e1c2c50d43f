//! Ground-truth troll identifiers.

use std::collections::BTreeMap;
use std::io::BufRead;
use std::path::Path;

use super::IngestError;
use crate::{Group, UserId};

/// Set of accounts labelled troll, each with an optional campaign label.
/// Every other account is regular.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrollRegistry {
    labels: BTreeMap<UserId, Option<String>>,
}

impl TrollRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// One decimal id per line with an optional `\t<label>`. Blank lines are
    /// ignored; repeated ids collapse, keeping the first label seen.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self, IngestError> {
        let mut reg = Self::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim_end_matches(['\r', '\n']);
            if line.trim().is_empty() {
                continue;
            }
            let (id, label) = match line.split_once('\t') {
                Some((id, label)) => (id, Some(label.trim()).filter(|l| !l.is_empty())),
                None => (line, None),
            };
            let id: UserId = id.trim().parse().map_err(|_| IngestError::Registry {
                line: i + 1,
                content: line.to_string(),
            })?;
            let slot = reg.labels.entry(id).or_insert(None);
            if slot.is_none() {
                *slot = label.map(str::to_string);
            }
        }
        Ok(reg)
    }

    pub fn load(path: &Path) -> Result<Self, IngestError> {
        let file = std::fs::File::open(path).map_err(|source| IngestError::Open {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(std::io::BufReader::new(file))
    }

    pub fn insert(&mut self, id: UserId, label: Option<String>) {
        self.labels.entry(id).or_insert(label);
    }

    pub fn contains(&self, id: UserId) -> bool {
        self.labels.contains_key(&id)
    }

    pub fn group_of(&self, id: UserId) -> Group {
        if self.contains(id) {
            Group::Troll
        } else {
            Group::Regular
        }
    }

    pub fn label(&self, id: UserId) -> Option<&str> {
        self.labels.get(&id).and_then(|l| l.as_deref())
    }

    pub fn ids(&self) -> impl Iterator<Item = UserId> + '_ {
        self.labels.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

impl FromIterator<UserId> for TrollRegistry {
    fn from_iter<I: IntoIterator<Item = UserId>>(iter: I) -> Self {
        Self {
            labels: iter.into_iter().map(|id| (id, None)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_collapse() {
        let r = TrollRegistry::parse("1\n2\n2\n".as_bytes()).unwrap();
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn empty_file_everyone_regular() {
        let r = TrollRegistry::parse("".as_bytes()).unwrap();
        assert!(r.is_empty());
        assert_eq!(r.group_of(5), Group::Regular);
    }

    #[test]
    fn labelled_entry() {
        let r = TrollRegistry::parse("4224729994\tRussia\n".as_bytes()).unwrap();
        assert!(r.contains(4224729994));
        assert_eq!(r.label(4224729994), Some("Russia"));
        assert_eq!(r.group_of(4224729994), Group::Troll);
    }

    #[test]
    fn bad_line_reports_number() {
        let err = TrollRegistry::parse("1\n\nabc\n".as_bytes()).unwrap_err();
        assert!(matches!(err, IngestError::Registry { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn crlf_and_first_label_wins() {
        let r = TrollRegistry::parse("7\tIran\r\n7\tRussia\r\n8\r\n".as_bytes()).unwrap();
        assert_eq!(r.label(7), Some("Iran"));
        assert!(r.contains(8));
    }
}
