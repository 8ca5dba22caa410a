//! Render a synthetic equirectangular frame, cut a viewport and the six
//! cube faces out of it, and write everything as PNG files.
//!
//! ```text
//! cargo run --example projection [OUT_DIR]
//! ```

use std::path::PathBuf;

use tripleview::geometry::{
    cubemap_to_equirect, equirect_to_cubemap, extract_viewport, EquirectFrame, Face, Image, Sampling,
    ViewingDirection,
};

fn save(img: &Image, path: PathBuf) {
    let bytes: Vec<u8> = img
        .data
        .iter()
        .map(|v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
        .collect();
    image::RgbImage::from_raw(img.width as u32, img.height as u32, bytes)
        .expect("rgb buffer")
        .save(&path)
        .unwrap();
    println!("wrote {}", path.display());
}

fn main() {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "projection_out".into()));
    std::fs::create_dir_all(&out).unwrap();

    // colour encodes direction: red grows with yaw, green with pitch, and
    // a 15 degree grid is drawn in blue
    let (w, h) = (1024, 512);
    let proto = EquirectFrame::new(0, Image::new(w, h, 3)).unwrap();
    let img = Image::from_fn(w, h, 3, |c, r| {
        let d = proto.pixel_direction(c, r);
        let grid = (d.yaw() / 15.0).fract().abs() < 0.05 || (d.pitch() / 15.0).fract().abs() < 0.05;
        vec![
            ((d.yaw() + 180.0) / 360.0) as f32,
            ((d.pitch() + 90.0) / 180.0) as f32,
            if grid { 1.0 } else { 0.2 },
        ]
    });
    let frame = EquirectFrame::new(0, img).unwrap();
    save(&frame.image, out.join("equirect.png"));

    let center = ViewingDirection::new(45.0, 20.0).unwrap();
    let view = extract_viewport(&frame, center, 100.0, 480, 320).unwrap();
    save(&view, out.join("viewport.png"));

    let cube = equirect_to_cubemap(&frame, 256).unwrap();
    for face in Face::ALL {
        save(cube.face(face), out.join(format!("face_{face:?}.png").to_lowercase()));
    }
    let back = cubemap_to_equirect(&cube, h, Sampling::Bilinear).unwrap();
    save(&back, out.join("round_trip.png"));
}
