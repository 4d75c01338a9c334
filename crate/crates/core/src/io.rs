//! On-disk formats for dense tensors and tensor trains.
//!
//! `TT1` (dense tensor): ASCII header `TT1 <N> <I1> ... <IN>\n` followed by
//! exactly `Π I_n` IEEE-754 little-endian 64-bit floats in linear order.
//!
//! `TTD1` (tensor train): ASCII header
//! `TTD1 <N> <R0> <I1> <R1> <I2> ... <IN> <RN>\n` followed by each core's
//! elements in linear order, concatenated in core order.
//!
//! Readers are strict: unknown magic, malformed headers, truncated payloads
//! and trailing bytes are all rejected.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::shape::Shape;
use crate::tensor::DenseTensor;
use crate::tt::TTDecomposition;
use crate::Tensor64;

const TENSOR_MAGIC: &str = "TT1";
const TRAIN_MAGIC: &str = "TTD1";

fn format_err(format: &'static str, path: &Path, reason: impl Into<String>) -> Error {
    Error::Format { format, path: path.display().to_string(), reason: reason.into() }
}

fn encode_floats(out: &mut Vec<u8>, values: &[f64]) {
    out.reserve(values.len() * 8);
    for v in values {
        out.extend_from_slice(&v.to_le_bytes());
    }
}

fn decode_floats(bytes: &[u8]) -> Vec<f64> {
    bytes
        .chunks_exact(8)
        .map(|chunk| f64::from_le_bytes(chunk.try_into().expect("8-byte chunk")))
        .collect()
}

/// Splits a file into its ASCII header tokens and the binary payload.
fn split_header<'a>(
    format: &'static str,
    path: &Path,
    bytes: &'a [u8],
    magic: &str,
) -> Result<(Vec<usize>, &'a [u8])> {
    let newline = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| format_err(format, path, "missing header line"))?;
    let header = std::str::from_utf8(&bytes[..newline])
        .map_err(|_| format_err(format, path, "header is not ASCII"))?;
    let mut tokens = header.split_whitespace();
    match tokens.next() {
        Some(m) if m == magic => {}
        other => {
            return Err(format_err(
                format,
                path,
                format!("bad magic {:?}, expected {magic:?}", other.unwrap_or("")),
            ))
        }
    }
    let fields = tokens
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| format_err(format, path, format!("non-integer header field {t:?}")))
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok((fields, &bytes[newline + 1..]))
}

/// Writes a dense tensor in `TT1` format.
pub fn write_tensor(path: impl AsRef<Path>, tensor: &Tensor64) -> Result<()> {
    let mut header = String::from(TENSOR_MAGIC);
    header.push(' ');
    header.push_str(&tensor.order().to_string());
    for d in tensor.shape().dims() {
        header.push(' ');
        header.push_str(&d.to_string());
    }
    header.push('\n');
    let mut bytes = header.into_bytes();
    encode_floats(&mut bytes, tensor.data());
    fs::write(path, bytes)?;
    Ok(())
}

/// Reads a dense tensor in `TT1` format.
pub fn read_tensor(path: impl AsRef<Path>) -> Result<Tensor64> {
    let path = path.as_ref();
    let bytes = fs::read(path)?;
    let (fields, payload) = split_header(TENSOR_MAGIC, path, &bytes, TENSOR_MAGIC)?;
    let (&order, dims) = fields
        .split_first()
        .ok_or_else(|| format_err(TENSOR_MAGIC, path, "header missing the order field"))?;
    if dims.len() != order {
        return Err(format_err(
            TENSOR_MAGIC,
            path,
            format!("header declares order {order} but lists {} dimensions", dims.len()),
        ));
    }
    let shape = Shape::new(dims.to_vec())
        .map_err(|e| format_err(TENSOR_MAGIC, path, e.to_string()))?;
    let expected = shape.len() * 8;
    if payload.len() != expected {
        return Err(format_err(
            TENSOR_MAGIC,
            path,
            format!("payload holds {} bytes, expected exactly {expected}", payload.len()),
        ));
    }
    Ok(DenseTensor::from_parts(shape, decode_floats(payload)))
}

/// Writes a tensor train in `TTD1` format.
pub fn write_train(path: impl AsRef<Path>, train: &TTDecomposition<f64>) -> Result<()> {
    let mut header = String::from(TRAIN_MAGIC);
    header.push(' ');
    header.push_str(&train.order().to_string());
    header.push(' ');
    header.push_str(&train.ranks()[0].to_string());
    for (dim, rank) in train.source_shape().dims().iter().zip(&train.ranks()[1..]) {
        header.push(' ');
        header.push_str(&dim.to_string());
        header.push(' ');
        header.push_str(&rank.to_string());
    }
    header.push('\n');
    let mut bytes = header.into_bytes();
    for core in train.cores() {
        encode_floats(&mut bytes, core.data());
    }
    fs::write(path, bytes)?;
    Ok(())
}

/// Reads a tensor train in `TTD1` format. The loaded train carries no
/// build accuracy (`epsilon() == None`).
pub fn read_train(path: impl AsRef<Path>) -> Result<TTDecomposition<f64>> {
    let path = path.as_ref();
    let bytes = fs::read(path)?;
    let (fields, payload) = split_header(TRAIN_MAGIC, path, &bytes, TRAIN_MAGIC)?;
    let (&order, chain) = fields
        .split_first()
        .ok_or_else(|| format_err(TRAIN_MAGIC, path, "header missing the order field"))?;
    if order == 0 || chain.len() != 2 * order + 1 {
        return Err(format_err(
            TRAIN_MAGIC,
            path,
            format!(
                "header declares order {order} but lists {} rank/dimension fields, expected {}",
                chain.len(),
                2 * order + 1
            ),
        ));
    }

    let mut cores = Vec::with_capacity(order);
    let mut offset = 0usize;
    for k in 0..order {
        let r_left = chain[2 * k];
        let dim = chain[2 * k + 1];
        let r_right = chain[2 * k + 2];
        let shape = Shape::new(vec![r_left, dim, r_right])
            .map_err(|e| format_err(TRAIN_MAGIC, path, e.to_string()))?;
        let bytes_len = shape.len() * 8;
        let end = offset
            .checked_add(bytes_len)
            .filter(|&e| e <= payload.len())
            .ok_or_else(|| {
                format_err(TRAIN_MAGIC, path, format!("payload truncated in core {}", k + 1))
            })?;
        cores.push(DenseTensor::from_parts(shape, decode_floats(&payload[offset..end])));
        offset = end;
    }
    if offset != payload.len() {
        return Err(format_err(
            TRAIN_MAGIC,
            path,
            format!("{} trailing bytes after the last core", payload.len() - offset),
        ));
    }
    TTDecomposition::new(cores, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tt::tt_svd;

    fn tmp() -> tempfile::TempDir {
        tempfile::tempdir().unwrap()
    }

    #[test]
    fn tensor_round_trip_is_bit_exact() {
        let dir = tmp();
        let path = dir.path().join("x.tt1");
        let shape = Shape::new(vec![3, 2, 2]).unwrap();
        let data = vec![
            1.0 / 3.0,
            -0.0,
            f64::MIN_POSITIVE / 2.0, // subnormal
            1e300,
            -7.25,
            0.1 + 0.2,
            2.0_f64.powi(-1022),
            99.0,
            -1e-300,
            0.0,
            5.5,
            -2.5,
        ];
        let t = DenseTensor::new(shape, data.clone()).unwrap();
        write_tensor(&path, &t).unwrap();
        let back = read_tensor(&path).unwrap();
        assert_eq!(back.shape(), t.shape());
        for (a, b) in back.data().iter().zip(&data) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn scalar_tensor_files_work() {
        let dir = tmp();
        let path = dir.path().join("s.tt1");
        let t = DenseTensor::scalar(4.25);
        write_tensor(&path, &t).unwrap();
        let back = read_tensor(&path).unwrap();
        assert_eq!(back.order(), 0);
        assert_eq!(back.data(), &[4.25]);
    }

    #[test]
    fn tensor_reader_rejects_trailing_bytes() {
        let dir = tmp();
        let path = dir.path().join("x.tt1");
        let t = DenseTensor::new(Shape::new(vec![2]).unwrap(), vec![1.0, 2.0]).unwrap();
        write_tensor(&path, &t).unwrap();
        let mut bytes = fs::read(&path).unwrap();
        bytes.push(0);
        fs::write(&path, bytes).unwrap();
        assert!(matches!(read_tensor(&path), Err(Error::Format { .. })));
    }

    #[test]
    fn tensor_reader_rejects_malformed_headers() {
        let dir = tmp();
        let path = dir.path().join("bad.tt1");
        for header in ["XX1 1 2\n", "TT1 2 2\n", "TT1 one 2\n", "TT1 1 0\n"] {
            let mut bytes = header.as_bytes().to_vec();
            bytes.extend_from_slice(&1.0f64.to_le_bytes());
            bytes.extend_from_slice(&2.0f64.to_le_bytes());
            fs::write(&path, bytes).unwrap();
            assert!(
                matches!(read_tensor(&path), Err(Error::Format { .. })),
                "header {header:?} should be rejected"
            );
        }
        fs::write(&path, b"no newline at all").unwrap();
        assert!(matches!(read_tensor(&path), Err(Error::Format { .. })));
    }

    #[test]
    fn train_round_trip_preserves_cores() {
        let dir = tmp();
        let path = dir.path().join("t.ttd1");
        let x = DenseTensor::random_gaussian(Shape::new(vec![4, 3, 5]).unwrap(), 50);
        let train = tt_svd(&x, 0.1).unwrap();
        write_train(&path, &train).unwrap();
        let back = read_train(&path).unwrap();
        assert_eq!(back.ranks(), train.ranks());
        assert_eq!(back.source_shape(), train.source_shape());
        assert_eq!(back.epsilon(), None);
        for (a, b) in back.cores().iter().zip(train.cores()) {
            assert_eq!(a.shape(), b.shape());
            for (x, y) in a.data().iter().zip(b.data()) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    #[test]
    fn train_reader_rejects_bad_boundary_ranks_and_truncation() {
        let dir = tmp();
        let path = dir.path().join("t.ttd1");

        // R0 = 2 violates the boundary invariant.
        let mut bytes = b"TTD1 1 2 3 1\n".to_vec();
        for _ in 0..6 {
            bytes.extend_from_slice(&0.0f64.to_le_bytes());
        }
        fs::write(&path, bytes).unwrap();
        assert!(matches!(read_train(&path), Err(Error::InvalidTrain(_))));

        // Payload one float short.
        let mut bytes = b"TTD1 1 1 3 1\n".to_vec();
        for _ in 0..2 {
            bytes.extend_from_slice(&0.0f64.to_le_bytes());
        }
        fs::write(&path, bytes).unwrap();
        assert!(matches!(read_train(&path), Err(Error::Format { .. })));

        // Wrong field count for the declared order.
        fs::write(&path, b"TTD1 2 1 3 1\n").unwrap();
        assert!(matches!(read_train(&path), Err(Error::Format { .. })));
    }
}
