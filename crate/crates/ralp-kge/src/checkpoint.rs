//! Checkpoints: a small text header followed by raw little-endian f32
//! rows, entities then relations.

use std::io::{Read, Write};
use std::path::Path;

use ralp_core::Scalar;

use crate::table::EmbeddingTable;
use crate::KgeError;

const MAGIC: &str = "ralp-kge v1";

pub fn save<F: Scalar>(
    table: &EmbeddingTable<F>,
    seed: u64,
    path: &Path,
) -> Result<(), KgeError> {
    let io_err = |source: std::io::Error| KgeError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut file = std::fs::File::create(path).map_err(io_err)?;
    write!(
        file,
        "{MAGIC}\ndim {}\nentities {}\nrelations {}\nseed {}\n\n",
        table.dim, table.n_entities, table.n_relations, seed
    )
    .map_err(io_err)?;
    let mut bytes =
        Vec::with_capacity((table.entities.len() + table.relations.len()) * 4);
    for &v in table.entities.iter().chain(&table.relations) {
        bytes.extend_from_slice(&(v.widen() as f32).to_le_bytes());
    }
    file.write_all(&bytes).map_err(io_err)
}

pub fn load<F: Scalar>(path: &Path) -> Result<(EmbeddingTable<F>, u64), KgeError> {
    let io_err = |source: std::io::Error| KgeError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .map_err(io_err)?
        .read_to_end(&mut bytes)
        .map_err(io_err)?;

    let header_end = bytes
        .windows(2)
        .position(|w| w == b"\n\n")
        .ok_or_else(|| KgeError::Checkpoint("missing header terminator".into()))?;
    let header = std::str::from_utf8(&bytes[..header_end])
        .map_err(|_| KgeError::Checkpoint("non-utf8 header".into()))?;
    let mut lines = header.lines();
    if lines.next() != Some(MAGIC) {
        return Err(KgeError::Checkpoint("bad magic line".into()));
    }
    let mut dim = None;
    let mut n_entities = None;
    let mut n_relations = None;
    let mut seed = 0u64;
    for line in lines {
        let Some((key, value)) = line.split_once(' ') else {
            return Err(KgeError::Checkpoint(format!("bad header line `{line}`")));
        };
        let value: u64 = value
            .parse()
            .map_err(|_| KgeError::Checkpoint(format!("bad header value `{line}`")))?;
        match key {
            "dim" => dim = Some(value as usize),
            "entities" => n_entities = Some(value as usize),
            "relations" => n_relations = Some(value as usize),
            "seed" => seed = value,
            other => return Err(KgeError::Checkpoint(format!("unknown header key `{other}`"))),
        }
    }
    let (dim, n_entities, n_relations) = match (dim, n_entities, n_relations) {
        (Some(d), Some(e), Some(r)) => (d, e, r),
        _ => return Err(KgeError::Checkpoint("incomplete header".into())),
    };

    let data = &bytes[header_end + 2..];
    let expected = (n_entities + n_relations) * dim * 4;
    if data.len() != expected {
        return Err(KgeError::Checkpoint(format!(
            "payload holds {} bytes, header implies {expected}",
            data.len()
        )));
    }
    let mut values = Vec::with_capacity(data.len() / 4);
    for chunk in data.chunks_exact(4) {
        let v = f32::from_le_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]);
        values.push(F::of(f64::from(v)));
    }
    let entity_len = n_entities * dim;
    Ok((
        EmbeddingTable {
            dim,
            n_entities,
            n_relations,
            relations: values.split_off(entity_len),
            entities: values,
        },
        seed,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_load_round_trip_at_f32_precision() {
        let table = EmbeddingTable::<f32>::xavier(4, 2, 8, 13);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.kge");
        save(&table, 13, &path).unwrap();
        let (loaded, seed) = load::<f32>(&path).unwrap();
        assert_eq!(loaded, table);
        assert_eq!(seed, 13);
    }

    #[test]
    fn truncated_payload_is_detected() {
        let table = EmbeddingTable::<f32>::xavier(2, 1, 4, 1);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.kge");
        save(&table, 1, &path).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        bytes.truncate(bytes.len() - 3);
        std::fs::write(&path, bytes).unwrap();
        assert!(matches!(
            load::<f32>(&path),
            Err(KgeError::Checkpoint(_))
        ));
    }
}
