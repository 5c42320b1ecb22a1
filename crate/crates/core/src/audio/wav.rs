use std::io::{self, Cursor};
use std::path::Path;

use super::{AudioBuffer, SAMPLE_RATE};
use crate::fsutil::write_atomic;

/// Canonical RIFF/WAVE header size for 16-bit PCM.
pub const WAV_HEADER_LEN: usize = 44;

/// `round(sample * 32767)`, saturating at the i16 range.
pub fn quantize(sample: f64) -> i16 {
    (sample * 32767.0).round().clamp(-32768.0, 32767.0) as i16
}

/// Encodes the buffer as 16-bit little-endian mono PCM WAV.
pub fn wav_bytes(a: &AudioBuffer) -> io::Result<Vec<u8>> {
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: SAMPLE_RATE,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut cursor = Cursor::new(Vec::with_capacity(WAV_HEADER_LEN + 2 * a.len()));
    {
        let mut writer = hound::WavWriter::new(&mut cursor, spec).map_err(to_io)?;
        let mut samples = writer.get_i16_writer(a.len() as u32);
        for &s in &a.samples {
            samples.write_sample(quantize(s));
        }
        samples.flush().map_err(to_io)?;
        writer.finalize().map_err(to_io)?;
    }
    Ok(cursor.into_inner())
}

pub fn write_wav(a: &AudioBuffer, path: &Path) -> io::Result<()> {
    write_atomic(path, &wav_bytes(a)?)
}

fn to_io(e: hound::Error) -> io::Error {
    match e {
        hound::Error::IoError(e) => e,
        other => io::Error::new(io::ErrorKind::InvalidData, other.to_string()),
    }
}
