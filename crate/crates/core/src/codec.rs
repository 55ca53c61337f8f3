//! PNG and binary PPM (P6) / PGM (P5) decoding and encoding.
//!
//! Everything is decoded to 8-bit RGB; grayscale inputs are replicated to all
//! three channels. Netpbm files must use a maxval of 255.

use std::fs::File;
use std::io::{BufWriter, Cursor, ErrorKind, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::RgbImage;

const PNG_SIGNATURE: [u8; 8] = [0x89, b'P', b'N', b'G', 0x0d, 0x0a, 0x1a, 0x0a];

pub fn load_image(path: impl AsRef<Path>) -> Result<RgbImage> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| match e.kind() {
        ErrorKind::NotFound => Error::FileNotFound(path.to_path_buf()),
        _ => Error::Io(e),
    })?;
    decode(&bytes)
}

/// Decodes an in-memory image, sniffing the format from its magic bytes.
pub fn decode(bytes: &[u8]) -> Result<RgbImage> {
    if bytes.starts_with(&PNG_SIGNATURE) {
        decode_png(bytes)
    } else if bytes.starts_with(b"P6") || bytes.starts_with(b"P5") {
        decode_pnm(bytes)
    } else {
        Err(Error::UnsupportedFormat(
            "expected PNG, PPM (P6) or PGM (P5) data".into(),
        ))
    }
}

fn decode_png(bytes: &[u8]) -> Result<RgbImage> {
    let corrupt = |e: png::DecodingError| Error::CorruptImage(e.to_string());

    let mut decoder = png::Decoder::new(Cursor::new(bytes));
    decoder.set_transformations(png::Transformations::EXPAND);
    let mut reader = decoder.read_info().map_err(corrupt)?;
    let (color, depth) = reader.output_color_type();
    if depth != png::BitDepth::Eight {
        return Err(Error::UnsupportedFormat(format!(
            "PNG bit depth {depth:?} (only 8-bit is supported)"
        )));
    }
    let channels = match color {
        png::ColorType::Grayscale => 1,
        png::ColorType::GrayscaleAlpha => 2,
        png::ColorType::Rgb => 3,
        png::ColorType::Rgba => 4,
        png::ColorType::Indexed => {
            return Err(Error::UnsupportedFormat("unexpanded palette PNG".into()))
        }
    };
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| Error::CorruptImage("PNG dimensions overflow".into()))?;
    let mut buf = vec![0; size];
    let info = reader.next_frame(&mut buf).map_err(corrupt)?;
    let (width, height) = (info.width as usize, info.height as usize);

    let mut pixels = Vec::with_capacity(width * height);
    for row in buf.chunks(info.line_size).take(height) {
        // alpha, when present, is dropped
        pixels.extend(row[..width * channels].chunks_exact(channels).map(|p| {
            if channels < 3 {
                [p[0], p[0], p[0]]
            } else {
                [p[0], p[1], p[2]]
            }
        }));
    }
    RgbImage::new(width, height, pixels)
}

fn decode_pnm(bytes: &[u8]) -> Result<RgbImage> {
    let gray = &bytes[..2] == b"P5";
    let mut pos = 2;
    let mut header = [0usize; 3];
    for field in header.iter_mut() {
        *field = next_header_number(bytes, &mut pos)?;
    }
    let [width, height, maxval] = header;
    if maxval != 255 {
        return Err(Error::UnsupportedFormat(format!(
            "netpbm maxval {maxval} (only 255 is supported)"
        )));
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(Error::CorruptImage("missing raster separator".into())),
    }
    let channels = if gray { 1 } else { 3 };
    let needed = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| Error::CorruptImage("netpbm dimensions overflow".into()))?;
    let raster = bytes
        .get(pos..pos + needed)
        .ok_or_else(|| Error::CorruptImage(format!("raster truncated: expected {needed} bytes")))?;
    if gray {
        RgbImage::from_gray(width, height, raster)
    } else {
        let pixels = raster.chunks_exact(3).map(|p| [p[0], p[1], p[2]]).collect();
        RgbImage::new(width, height, pixels)
    }
}

fn next_header_number(bytes: &[u8], pos: &mut usize) -> Result<usize> {
    loop {
        match bytes.get(*pos) {
            Some(b'#') => {
                while !matches!(bytes.get(*pos), None | Some(b'\n') | Some(b'\r')) {
                    *pos += 1;
                }
            }
            Some(b) if b.is_ascii_whitespace() => *pos += 1,
            Some(_) => break,
            None => return Err(Error::CorruptImage("netpbm header truncated".into())),
        }
    }
    let start = *pos;
    while bytes.get(*pos).is_some_and(u8::is_ascii_digit) {
        *pos += 1;
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::CorruptImage("malformed netpbm header".into()))
}

/// Writes `img`, choosing the encoding from the file extension:
/// `.png`, `.ppm`/`.pnm` (P6) or `.pgm` (P5, grayscale images only).
pub fn save_image(path: impl AsRef<Path>, img: &RgbImage) -> Result<()> {
    let path = path.as_ref();
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    let bytes = match ext.as_str() {
        "png" => encode_png(img)?,
        "ppm" | "pnm" => encode_ppm(img),
        "pgm" => encode_pgm(img)?,
        other => {
            return Err(Error::UnsupportedFormat(format!(
                "cannot infer output format from extension {other:?}"
            )))
        }
    };
    let mut out = BufWriter::new(File::create(path)?);
    out.write_all(&bytes)?;
    out.flush()?;
    Ok(())
}

pub fn encode_ppm(img: &RgbImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend(img.pixels().iter().flatten());
    out
}

pub fn encode_pgm(img: &RgbImage) -> Result<Vec<u8>> {
    if !img.is_gray() {
        return Err(Error::UnsupportedFormat(
            "PGM output requires a grayscale image".into(),
        ));
    }
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend(img.pixels().iter().map(|p| p[0]));
    Ok(out)
}

pub fn encode_png(img: &RgbImage) -> Result<Vec<u8>> {
    let encode_err = |e: png::EncodingError| Error::Io(std::io::Error::other(e));
    let mut out = Vec::new();
    {
        let mut encoder = png::Encoder::new(&mut out, img.width() as u32, img.height() as u32);
        encoder.set_color(png::ColorType::Rgb);
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder.write_header().map_err(encode_err)?;
        let data: Vec<u8> = img.pixels().iter().flatten().copied().collect();
        writer.write_image_data(&data).map_err(encode_err)?;
        writer.finish().map_err(encode_err)?;
    }
    Ok(out)
}
