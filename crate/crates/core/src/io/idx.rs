//! IDX image/label files (the MNIST distribution format) and balanced
//! per-digit sampling.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Dataset, Dissimilarity};
use crate::hierarchy::Label;

pub const IMAGES_MAGIC: u32 = 0x0000_0803;
pub const LABELS_MAGIC: u32 = 0x0000_0801;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdxImages {
    pub rows: usize,
    pub cols: usize,
    /// `count · rows · cols` bytes, row-major per image.
    pub pixels: Vec<u8>,
}

impl IdxImages {
    pub fn count(&self) -> usize {
        self.pixels
            .len()
            .checked_div(self.rows * self.cols)
            .unwrap_or(0)
    }

    pub fn image(&self, i: usize) -> &[u8] {
        let size = self.rows * self.cols;
        &self.pixels[i * size..(i + 1) * size]
    }
}

fn be_u32(bytes: &[u8], at: usize) -> Result<u32> {
    let b = bytes.get(at..at + 4).ok_or(Error::TruncatedFile {
        needed: at + 4,
        available: bytes.len(),
    })?;
    Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
}

fn check_magic(bytes: &[u8], expected: u32) -> Result<()> {
    let found = be_u32(bytes, 0)?;
    if found != expected {
        return Err(Error::BadMagic { expected, found });
    }
    Ok(())
}

fn body(bytes: &[u8], header: usize, len: usize) -> Result<&[u8]> {
    let needed = header.checked_add(len).ok_or(Error::TruncatedFile {
        needed: usize::MAX,
        available: bytes.len(),
    })?;
    if bytes.len() < needed {
        return Err(Error::TruncatedFile {
            needed,
            available: bytes.len(),
        });
    }
    if bytes.len() > needed {
        return Err(Error::TrailingData(bytes.len() - needed));
    }
    Ok(&bytes[header..])
}

pub fn parse_idx_images(bytes: &[u8]) -> Result<IdxImages> {
    check_magic(bytes, IMAGES_MAGIC)?;
    let count = be_u32(bytes, 4)? as usize;
    let rows = be_u32(bytes, 8)? as usize;
    let cols = be_u32(bytes, 12)? as usize;
    let len = count
        .checked_mul(rows)
        .and_then(|v| v.checked_mul(cols))
        .unwrap_or(usize::MAX);
    let pixels = body(bytes, 16, len)?.to_vec();
    Ok(IdxImages { rows, cols, pixels })
}

pub fn parse_idx_labels(bytes: &[u8]) -> Result<Vec<u8>> {
    check_magic(bytes, LABELS_MAGIC)?;
    let count = be_u32(bytes, 4)? as usize;
    Ok(body(bytes, 8, count)?.to_vec())
}

/// Parsed image and label files, kept in memory for repeated sampling.
#[derive(Clone, Debug)]
pub struct MnistCorpus {
    images: IdxImages,
    labels: Vec<u8>,
    by_digit: [Vec<usize>; 10],
}

impl MnistCorpus {
    pub fn from_bytes(images: &[u8], labels: &[u8]) -> Result<Self> {
        let images = parse_idx_images(images)?;
        let labels = parse_idx_labels(labels)?;
        if images.count() != labels.len() {
            return Err(Error::CountMismatch {
                images: images.count(),
                labels: labels.len(),
            });
        }
        let mut by_digit: [Vec<usize>; 10] = Default::default();
        for (i, &d) in labels.iter().enumerate() {
            let slot = by_digit
                .get_mut(d as usize)
                .ok_or_else(|| Error::parse(8 + i, format!("digit label {d} out of range")))?;
            slot.push(i);
        }
        Ok(MnistCorpus {
            images,
            labels,
            by_digit,
        })
    }

    pub fn from_files(images: impl AsRef<Path>, labels: impl AsRef<Path>) -> Result<Self> {
        MnistCorpus::from_bytes(&std::fs::read(images)?, &std::fs::read(labels)?)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn digit(&self, i: usize) -> u8 {
        self.labels[i]
    }

    /// `per_digit` images of every digit, drawn without replacement by a
    /// seeded shuffle. Pixels are scaled to `[0, 1]`; a point's label is its
    /// image index in the file.
    pub fn sample(&self, per_digit: usize, seed: u64) -> Result<Dataset> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = Vec::with_capacity(10 * per_digit);
        for (digit, pool) in self.by_digit.iter().enumerate() {
            if pool.len() < per_digit {
                return Err(Error::InsufficientSamples {
                    digit: digit as u8,
                    available: pool.len(),
                    requested: per_digit,
                });
            }
            let mut pool = pool.clone();
            pool.shuffle(&mut rng);
            for &i in &pool[..per_digit] {
                let x = self
                    .images
                    .image(i)
                    .iter()
                    .map(|&p| p as f64 / 255.0)
                    .collect();
                points.push((i as Label, x));
            }
        }
        Dataset::new(points, Dissimilarity::Euclidean)
    }
}

pub fn load_mnist(
    images_path: impl AsRef<Path>,
    labels_path: impl AsRef<Path>,
    per_digit: usize,
    seed: u64,
) -> Result<Dataset> {
    MnistCorpus::from_files(images_path, labels_path)?.sample(per_digit, seed)
}

/// Serializes images in IDX form; the inverse of [`parse_idx_images`].
pub fn encode_idx_images(images: &IdxImages) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 + images.pixels.len());
    for v in [
        IMAGES_MAGIC,
        images.count() as u32,
        images.rows as u32,
        images.cols as u32,
    ] {
        out.extend_from_slice(&v.to_be_bytes());
    }
    out.extend_from_slice(&images.pixels);
    out
}

/// Serializes labels in IDX form; the inverse of [`parse_idx_labels`].
pub fn encode_idx_labels(labels: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + labels.len());
    out.extend_from_slice(&LABELS_MAGIC.to_be_bytes());
    out.extend_from_slice(&(labels.len() as u32).to_be_bytes());
    out.extend_from_slice(labels);
    out
}
