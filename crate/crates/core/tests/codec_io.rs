use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use whe::{load_image, save_image, Error, RgbImage};

fn random_image(seed: u64, w: usize, h: usize) -> RgbImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    RgbImage::new(w, h, (0..w * h).map(|_| rng.gen()).collect()).unwrap()
}

#[test]
fn png_and_ppm_round_trip_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let img = random_image(1, 3, 3);
    for name in ["a.png", "a.ppm", "A.PNG"] {
        let path = dir.path().join(name);
        save_image(&path, &img).unwrap();
        assert_eq!(load_image(&path).unwrap(), img, "{name}");
    }
}

#[test]
fn pgm_round_trip_for_gray_only() {
    let dir = tempfile::tempdir().unwrap();
    let gray = RgbImage::from_gray(4, 2, &[0, 1, 2, 3, 250, 251, 252, 255]).unwrap();
    let path = dir.path().join("g.pgm");
    save_image(&path, &gray).unwrap();
    assert_eq!(load_image(&path).unwrap(), gray);
    assert!(matches!(
        save_image(dir.path().join("c.pgm"), &random_image(2, 2, 2)),
        Err(Error::UnsupportedFormat(_))
    ));
}

#[test]
fn missing_file_is_reported_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nope.png");
    match load_image(&path) {
        Err(Error::FileNotFound(p)) => assert_eq!(p, path),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn unwritable_destination_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing-subdir").join("out.png");
    assert!(matches!(save_image(&path, &random_image(3, 2, 2)), Err(Error::Io(_))));
}

#[test]
fn unknown_extension_is_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let result = save_image(dir.path().join("out.bmp"), &random_image(4, 2, 2));
    assert!(matches!(result, Err(Error::UnsupportedFormat(_))));
}

#[test]
fn garbage_file_is_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.png");
    std::fs::write(&path, b"not an image").unwrap();
    assert!(matches!(load_image(&path), Err(Error::UnsupportedFormat(_))));
}
