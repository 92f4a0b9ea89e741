//! Conversion between [`Image`] and encoded files.

use std::io::Cursor;
use std::path::Path;

use illusion_core::Image;
use image::{ImageFormat, RgbImage};

#[derive(Debug, thiserror::Error)]
pub enum ImageIoError {
    #[error("cannot decode {path}: {source}")]
    Decode { path: String, source: image::ImageError },
    #[error("cannot encode image: {0}")]
    Encode(#[from] image::ImageError),
    #[error(transparent)]
    Shape(#[from] illusion_core::Error),
}

/// Reads any supported format (PNG, JPEG), dropping alpha.
pub fn load(path: &Path) -> Result<Image, ImageIoError> {
    let decoded =
        image::open(path).map_err(|source| ImageIoError::Decode { path: path.display().to_string(), source })?;
    from_dynamic(decoded)
}

pub fn decode(bytes: &[u8]) -> Result<Image, ImageIoError> {
    let decoded =
        image::load_from_memory(bytes).map_err(|source| ImageIoError::Decode { path: "<memory>".into(), source })?;
    from_dynamic(decoded)
}

fn from_dynamic(img: image::DynamicImage) -> Result<Image, ImageIoError> {
    let rgb = img.into_rgb8();
    let (w, h) = (rgb.width() as usize, rgb.height() as usize);
    Ok(Image::from_raw(w, h, rgb.into_raw())?)
}

fn to_rgb(img: &Image) -> RgbImage {
    RgbImage::from_raw(img.width() as u32, img.height() as u32, img.as_raw().to_vec())
        .expect("buffer length is checked by Image")
}

pub fn encode_png(img: &Image) -> Result<Vec<u8>, ImageIoError> {
    let mut out = Cursor::new(Vec::new());
    to_rgb(img).write_to(&mut out, ImageFormat::Png)?;
    Ok(out.into_inner())
}

pub fn save_png(img: &Image, path: &Path) -> Result<(), ImageIoError> {
    to_rgb(img).save_with_format(path, ImageFormat::Png)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use illusion_core::Rgb;

    #[test]
    fn png_round_trip() {
        let img = Image::from_fn(7, 5, |x, y| Rgb([x as u8 * 30, y as u8 * 40, 9])).unwrap();
        let bytes = encode_png(&img).unwrap();
        assert_eq!(&bytes[1..4], b"PNG");
        assert_eq!(decode(&bytes).unwrap(), img);
    }

    #[test]
    fn garbage_is_an_error() {
        assert!(decode(b"not an image").is_err());
        assert!(load(Path::new("/nonexistent/x.png")).is_err());
    }
}
