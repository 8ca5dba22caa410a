//! Spherical viewing directions and the equirectangular/cubemap/viewport
//! projections.
//!
//! Axis convention, used by every projection and by the file formats:
//!
//! * yaw 0, pitch 0 is the centre of the equirectangular image;
//! * yaw grows to the right (image column grows), pitch grows upward
//!   (image row shrinks);
//! * the unit vector of a direction is
//!   `(cos(pitch) cos(yaw), cos(pitch) sin(yaw), sin(pitch))`, so `+x` is
//!   forward, `+y` is right and `+z` is up.
//!
//! Equirectangular pixel `(col, row)` covers yaw
//! `[col, col + 1) * 360 / width - 180` and pitch
//! `90 - [row, row + 1) * 180 / height`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("pitch {0} is outside [-90, 90]")]
    PitchOutOfRange(f64),
    #[error("angle is not finite")]
    NonFinite,
    #[error("field of view {0} must lie strictly between 0 and 180 degrees")]
    InvalidFov(f64),
    #[error("malformed frame: {0}")]
    MalformedFrame(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

/// A viewing direction on the unit sphere, in degrees.
///
/// Yaw is normalized into `[-180, 180)`; at the poles the yaw is
/// irrelevant and equality treats all pole directions as one point.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ViewingDirection {
    yaw: f64,
    pitch: f64,
}

impl ViewingDirection {
    pub fn new(yaw: f64, pitch: f64) -> Result<Self> {
        if !yaw.is_finite() || !pitch.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if !(-90.0..=90.0).contains(&pitch) {
            return Err(GeometryError::PitchOutOfRange(pitch));
        }
        Ok(Self {
            yaw: normalize_yaw(yaw),
            pitch,
        })
    }

    pub fn yaw(&self) -> f64 {
        self.yaw
    }

    pub fn pitch(&self) -> f64 {
        self.pitch
    }

    pub fn is_pole(&self) -> bool {
        self.pitch.abs() == 90.0
    }

    pub fn to_unit_vector(&self) -> Vec3 {
        let (sy, cy) = self.yaw.to_radians().sin_cos();
        let (sp, cp) = self.pitch.to_radians().sin_cos();
        Vec3::new(cp * cy, cp * sy, sp)
    }

    /// Inverse of [`to_unit_vector`](Self::to_unit_vector). The input does
    /// not need to be normalized but must be non-zero.
    pub fn from_vector(v: Vec3) -> Self {
        let horiz = v.x.hypot(v.y);
        let pitch = v.z.atan2(horiz).to_degrees();
        let yaw = if horiz == 0.0 {
            0.0
        } else {
            v.y.atan2(v.x).to_degrees()
        };
        Self {
            yaw: normalize_yaw(yaw),
            pitch: pitch.clamp(-90.0, 90.0),
        }
    }
}

impl PartialEq for ViewingDirection {
    fn eq(&self, other: &Self) -> bool {
        if self.pitch != other.pitch {
            return false;
        }
        self.is_pole() || self.yaw == other.yaw
    }
}

impl fmt::Display for ViewingDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.yaw, self.pitch)
    }
}

fn normalize_yaw(yaw: f64) -> f64 {
    if (-180.0..180.0).contains(&yaw) {
        return yaw;
    }
    let y = (yaw + 180.0).rem_euclid(360.0) - 180.0;
    // rem_euclid can round up to exactly 360 for tiny negative inputs
    if y >= 180.0 {
        y - 360.0
    } else {
        y
    }
}

/// Central angle between two directions in degrees, in `[0, 180]`.
///
/// Uses `atan2(|a x b|, a . b)` which keeps full precision both for nearly
/// coincident and for nearly antipodal points.
pub fn great_circle_distance(a: ViewingDirection, b: ViewingDirection) -> f64 {
    angle_between(a.to_unit_vector(), b.to_unit_vector())
}

/// The direction reached by travelling `distance_deg` along the great
/// circle leaving `from` with compass bearing `bearing_deg` (0 = up,
/// 90 = toward growing yaw).
pub fn offset_direction(from: ViewingDirection, bearing_deg: f64, distance_deg: f64) -> ViewingDirection {
    let p = from.to_unit_vector();
    let (sy, cy) = from.yaw().to_radians().sin_cos();
    let (sp, cp) = from.pitch().to_radians().sin_cos();
    let east = Vec3::new(-sy, cy, 0.0);
    let north = Vec3::new(-sp * cy, -sp * sy, cp);
    let (sb, cb) = bearing_deg.to_radians().sin_cos();
    let t = north.scale(cb) + east.scale(sb);
    let (sd, cd) = distance_deg.to_radians().sin_cos();
    ViewingDirection::from_vector(p.scale(cd) + t.scale(sd))
}

/// Angle between two non-zero vectors in degrees.
pub fn angle_between(a: Vec3, b: Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b)).to_degrees()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    /// Unit vector in the same direction, or `None` for (near) zero vectors.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 1e-12).then(|| self.scale(1.0 / n))
    }
}

impl std::ops::Add for Vec3 {
    type Output = Vec3;

    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl std::ops::Sub for Vec3 {
    type Output = Vec3;

    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// A 3x3 rotation stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation([[f64; 3]; 3]);

impl Rotation {
    /// Rotation about the unit axis `axis` by `angle_deg` (right-handed).
    pub fn about_axis(axis: Vec3, angle_deg: f64) -> Rotation {
        let a = axis.normalized().unwrap_or(Vec3::new(0.0, 0.0, 1.0));
        let (s, c) = angle_deg.to_radians().sin_cos();
        let t = 1.0 - c;
        Rotation([
            [t * a.x * a.x + c, t * a.x * a.y - s * a.z, t * a.x * a.z + s * a.y],
            [t * a.x * a.y + s * a.z, t * a.y * a.y + c, t * a.y * a.z - s * a.x],
            [t * a.x * a.z - s * a.y, t * a.y * a.z + s * a.x, t * a.z * a.z + c],
        ])
    }

    /// The camera rotation that maps the forward axis `+x` onto `center`,
    /// keeping the camera's right vector horizontal.
    pub fn looking_at(center: ViewingDirection) -> Rotation {
        let (sy, cy) = center.yaw().to_radians().sin_cos();
        let (sp, cp) = center.pitch().to_radians().sin_cos();
        // columns: forward, right, up
        let forward = Vec3::new(cp * cy, cp * sy, sp);
        let right = Vec3::new(-sy, cy, 0.0);
        let up = Vec3::new(-sp * cy, -sp * sy, cp);
        Rotation([
            [forward.x, right.x, up.x],
            [forward.y, right.y, up.y],
            [forward.z, right.z, up.z],
        ])
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.0;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn apply_direction(&self, d: ViewingDirection) -> ViewingDirection {
        ViewingDirection::from_vector(self.apply(d.to_unit_vector()))
    }
}

/// A row-major image with interleaved `f32` channels.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub channels: usize,
    pub data: Vec<f32>,
}

impl Image {
    pub fn new(width: usize, height: usize, channels: usize) -> Self {
        Self {
            width,
            height,
            channels,
            data: vec![0.0; width * height * channels],
        }
    }

    pub fn filled(width: usize, height: usize, value: &[f32]) -> Self {
        let mut img = Self::new(width, height, value.len());
        for px in img.data.chunks_mut(value.len().max(1)) {
            px.copy_from_slice(value);
        }
        img
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        channels: usize,
        mut f: impl FnMut(usize, usize) -> Vec<f32>,
    ) -> Self {
        let mut img = Self::new(width, height, channels);
        for row in 0..height {
            for col in 0..width {
                let v = f(col, row);
                img.pixel_mut(col, row).copy_from_slice(&v[..channels]);
            }
        }
        img
    }

    pub fn pixel(&self, col: usize, row: usize) -> &[f32] {
        let i = (row * self.width + col) * self.channels;
        &self.data[i..i + self.channels]
    }

    pub fn pixel_mut(&mut self, col: usize, row: usize) -> &mut [f32] {
        let i = (row * self.width + col) * self.channels;
        &mut self.data[i..i + self.channels]
    }

    fn check(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 || self.channels == 0 {
            return Err(GeometryError::MalformedFrame("empty image".into()));
        }
        if self.data.len() != self.width * self.height * self.channels {
            return Err(GeometryError::MalformedFrame(format!(
                "expected {} samples for {}x{}x{}, found {}",
                self.width * self.height * self.channels,
                self.width,
                self.height,
                self.channels,
                self.data.len()
            )));
        }
        Ok(())
    }
}

/// One equirectangular 360-degree frame.
#[derive(Debug, Clone, PartialEq)]
pub struct EquirectFrame {
    pub frame_id: u64,
    pub image: Image,
}

impl EquirectFrame {
    pub fn new(frame_id: u64, image: Image) -> Result<Self> {
        image.check()?;
        if image.width != 2 * image.height {
            return Err(GeometryError::MalformedFrame(format!(
                "equirectangular frames must be 2:1, got {}x{}",
                image.width, image.height
            )));
        }
        Ok(Self { frame_id, image })
    }

    /// Continuous pixel coordinates (column, row) of a direction; pixel
    /// `(c, r)` spans `[c, c + 1) x [r, r + 1)`.
    pub fn pixel_coords(&self, d: ViewingDirection) -> (f64, f64) {
        let w = self.image.width as f64;
        let h = self.image.height as f64;
        let u = (d.yaw() + 180.0) / 360.0 * w;
        let v = (90.0 - d.pitch()) / 180.0 * h;
        (u, v)
    }

    /// Direction through the centre of pixel `(col, row)`.
    pub fn pixel_direction(&self, col: usize, row: usize) -> ViewingDirection {
        let w = self.image.width as f64;
        let h = self.image.height as f64;
        let yaw = (col as f64 + 0.5) / w * 360.0 - 180.0;
        let pitch = 90.0 - (row as f64 + 0.5) / h * 180.0;
        ViewingDirection::from_vector(
            ViewingDirection { yaw, pitch }.to_unit_vector(),
        )
    }

    pub fn sample(&self, d: ViewingDirection, mode: Sampling, out: &mut [f32]) {
        let (u, v) = self.pixel_coords(d);
        let img = &self.image;
        match mode {
            Sampling::Nearest => {
                let col = (u.floor() as i64).rem_euclid(img.width as i64) as usize;
                let row = (v.floor() as i64).clamp(0, img.height as i64 - 1) as usize;
                out.copy_from_slice(img.pixel(col, row));
            }
            Sampling::Bilinear => {
                // pixel centres sit at half-integers
                let x = u - 0.5;
                let y = v - 0.5;
                let x0 = x.floor();
                let y0 = y.floor();
                let fx = (x - x0) as f32;
                let fy = (y - y0) as f32;
                let w = img.width as i64;
                let h = img.height as i64;
                let c0 = (x0 as i64).rem_euclid(w) as usize;
                let c1 = (x0 as i64 + 1).rem_euclid(w) as usize;
                let r0 = (y0 as i64).clamp(0, h - 1) as usize;
                let r1 = (y0 as i64 + 1).clamp(0, h - 1) as usize;
                blend(
                    [
                        img.pixel(c0, r0),
                        img.pixel(c1, r0),
                        img.pixel(c0, r1),
                        img.pixel(c1, r1),
                    ],
                    fx,
                    fy,
                    out,
                );
            }
        }
    }
}

fn blend(p: [&[f32]; 4], fx: f32, fy: f32, out: &mut [f32]) {
    for (c, o) in out.iter_mut().enumerate() {
        let top = p[0][c] * (1.0 - fx) + p[1][c] * fx;
        let bottom = p[2][c] * (1.0 - fx) + p[3][c] * fx;
        *o = top * (1.0 - fy) + bottom * fy;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    Nearest,
    #[default]
    Bilinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Face {
    Front,
    Back,
    Left,
    Right,
    Up,
    Down,
}

impl Face {
    /// Fixed face order used for storage and feature concatenation.
    pub const ALL: [Face; 6] = [
        Face::Front,
        Face::Back,
        Face::Left,
        Face::Right,
        Face::Up,
        Face::Down,
    ];

    /// Direction of the face's optical axis.
    pub fn center(self) -> ViewingDirection {
        let (yaw, pitch) = match self {
            Face::Front => (0.0, 0.0),
            Face::Back => (180.0, 0.0),
            Face::Left => (-90.0, 0.0),
            Face::Right => (90.0, 0.0),
            Face::Up => (0.0, 90.0),
            Face::Down => (0.0, -90.0),
        };
        ViewingDirection::new(yaw, pitch).expect("static face axis")
    }

    fn index(self) -> usize {
        Face::ALL.iter().position(|f| *f == self).unwrap()
    }
}

/// Six 90-degree perspective faces. Each face is exactly the viewport
/// [`extract_viewport`] produces for [`Face::center`] with a 90 degree FoV,
/// so "up" in the up/down faces points toward yaw 180 / yaw 0 respectively.
#[derive(Debug, Clone, PartialEq)]
pub struct CubemapFaces {
    pub face_size: usize,
    faces: Vec<Image>,
}

impl CubemapFaces {
    pub fn new(faces: Vec<Image>) -> Result<Self> {
        if faces.len() != 6 {
            return Err(GeometryError::MalformedFrame(format!(
                "a cubemap needs 6 faces, got {}",
                faces.len()
            )));
        }
        let size = faces[0].width;
        for f in &faces {
            f.check()?;
            if f.width != size || f.height != size {
                return Err(GeometryError::MalformedFrame(
                    "cubemap faces must be square and equally sized".into(),
                ));
            }
        }
        Ok(Self {
            face_size: size,
            faces,
        })
    }

    pub fn face(&self, face: Face) -> &Image {
        &self.faces[face.index()]
    }

    /// Sample the cube along a direction.
    pub fn sample(&self, d: ViewingDirection, mode: Sampling, out: &mut [f32]) {
        let v = d.to_unit_vector();
        let face = dominant_face(v);
        let cam = Rotation::looking_at(face.center());
        // camera-local coordinates via the transpose
        let m = cam.0;
        let local = Vec3::new(
            m[0][0] * v.x + m[1][0] * v.y + m[2][0] * v.z,
            m[0][1] * v.x + m[1][1] * v.y + m[2][1] * v.z,
            m[0][2] * v.x + m[1][2] * v.y + m[2][2] * v.z,
        );
        let n = self.face_size as f64;
        let a = local.y / local.x;
        let b = local.z / local.x;
        let u = (a + 1.0) / 2.0 * n;
        let vv = (1.0 - b) / 2.0 * n;
        let img = self.face(face);
        match mode {
            Sampling::Nearest => {
                let col = (u.floor() as i64).clamp(0, n as i64 - 1) as usize;
                let row = (vv.floor() as i64).clamp(0, n as i64 - 1) as usize;
                out.copy_from_slice(img.pixel(col, row));
            }
            Sampling::Bilinear => {
                let x = (u - 0.5).clamp(0.0, n - 1.0);
                let y = (vv - 0.5).clamp(0.0, n - 1.0);
                let x0 = x.floor() as usize;
                let y0 = y.floor() as usize;
                let x1 = (x0 + 1).min(self.face_size - 1);
                let y1 = (y0 + 1).min(self.face_size - 1);
                blend(
                    [
                        img.pixel(x0, y0),
                        img.pixel(x1, y0),
                        img.pixel(x0, y1),
                        img.pixel(x1, y1),
                    ],
                    (x - x0 as f64) as f32,
                    (y - y0 as f64) as f32,
                    out,
                );
            }
        }
    }
}

fn dominant_face(v: Vec3) -> Face {
    let (ax, ay, az) = (v.x.abs(), v.y.abs(), v.z.abs());
    if ax >= ay && ax >= az {
        if v.x >= 0.0 {
            Face::Front
        } else {
            Face::Back
        }
    } else if ay >= az {
        if v.y >= 0.0 {
            Face::Right
        } else {
            Face::Left
        }
    } else if v.z >= 0.0 {
        Face::Up
    } else {
        Face::Down
    }
}

/// Perspective (gnomonic) view of `frame` centred on `center` with a
/// horizontal field of view of `fov_deg`, using bilinear sampling.
pub fn extract_viewport(
    frame: &EquirectFrame,
    center: ViewingDirection,
    fov_deg: f64,
    out_w: usize,
    out_h: usize,
) -> Result<Image> {
    extract_viewport_with(frame, center, fov_deg, out_w, out_h, Sampling::Bilinear)
}

pub fn extract_viewport_with(
    frame: &EquirectFrame,
    center: ViewingDirection,
    fov_deg: f64,
    out_w: usize,
    out_h: usize,
    sampling: Sampling,
) -> Result<Image> {
    if !(fov_deg > 0.0 && fov_deg < 180.0) {
        return Err(GeometryError::InvalidFov(fov_deg));
    }
    if out_w == 0 || out_h == 0 {
        return Err(GeometryError::MalformedFrame("empty output size".into()));
    }
    frame.image.check()?;
    let cam = Rotation::looking_at(center);
    let half = (fov_deg.to_radians() / 2.0).tan();
    let aspect = out_h as f64 / out_w as f64;
    let mut out = Image::new(out_w, out_h, frame.image.channels);
    let channels = frame.image.channels;
    for row in 0..out_h {
        let b = (1.0 - (row as f64 + 0.5) / out_h as f64 * 2.0) * half * aspect;
        for col in 0..out_w {
            let a = ((col as f64 + 0.5) / out_w as f64 * 2.0 - 1.0) * half;
            let ray = cam.apply(Vec3::new(1.0, a, b));
            let d = ViewingDirection::from_vector(ray);
            let i = (row * out_w + col) * channels;
            frame.sample(d, sampling, &mut out.data[i..i + channels]);
        }
    }
    Ok(out)
}

/// Project an equirectangular frame onto six cube faces.
pub fn equirect_to_cubemap(frame: &EquirectFrame, face_size: usize) -> Result<CubemapFaces> {
    equirect_to_cubemap_with(frame, face_size, Sampling::Bilinear)
}

pub fn equirect_to_cubemap_with(
    frame: &EquirectFrame,
    face_size: usize,
    sampling: Sampling,
) -> Result<CubemapFaces> {
    if face_size == 0 {
        return Err(GeometryError::MalformedFrame("face_size must be >= 1".into()));
    }
    let faces = Face::ALL
        .iter()
        .map(|f| extract_viewport_with(frame, f.center(), 90.0, face_size, face_size, sampling))
        .collect::<Result<Vec<_>>>()?;
    CubemapFaces::new(faces)
}

/// Resample a cubemap back to an equirectangular frame of the given height.
pub fn cubemap_to_equirect(cube: &CubemapFaces, height: usize, sampling: Sampling) -> Result<Image> {
    if height == 0 {
        return Err(GeometryError::MalformedFrame("height must be >= 1".into()));
    }
    let width = 2 * height;
    let channels = cube.faces[0].channels;
    let proto = EquirectFrame {
        frame_id: 0,
        image: Image::new(width, height, channels),
    };
    let mut out = Image::new(width, height, channels);
    for row in 0..height {
        for col in 0..width {
            let d = proto.pixel_direction(col, row);
            cube.sample(d, sampling, out.pixel_mut(col, row));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dir(y: f64, p: f64) -> ViewingDirection {
        ViewingDirection::new(y, p).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(great_circle_distance(dir(0.0, 0.0), dir(0.0, 0.0)), 0.0);
        assert!((great_circle_distance(dir(0.0, 0.0), dir(180.0, 0.0)) - 180.0).abs() < 1e-12);
        assert!(great_circle_distance(dir(0.0, 90.0), dir(137.0, 90.0)).abs() < 1e-12);
    }

    #[test]
    fn yaw_wraparound() {
        let d = great_circle_distance(dir(179.9, 0.0), dir(-179.9, 0.0));
        assert!(d < 0.3 && (d - 0.2).abs() < 1e-9, "{d}");
    }

    #[test]
    fn constructor_normalizes_yaw_and_rejects_pitch() {
        assert_eq!(dir(190.0, 0.0).yaw(), -170.0);
        assert_eq!(dir(-540.0, 0.0).yaw(), -180.0);
        assert_eq!(dir(180.0, 0.0).yaw(), -180.0);
        assert_eq!(
            ViewingDirection::new(0.0, 95.0),
            Err(GeometryError::PitchOutOfRange(95.0))
        );
        assert!(ViewingDirection::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn poles_compare_equal() {
        assert_eq!(dir(10.0, 90.0), dir(-120.0, 90.0));
        assert_ne!(dir(10.0, 89.0), dir(-120.0, 89.0));
    }

    #[test]
    fn unit_vector_axes() {
        let v = dir(0.0, 0.0).to_unit_vector();
        assert_eq!(v, Vec3::new(1.0, 0.0, 0.0));
        let p = dir(0.0, 90.0).to_unit_vector();
        assert!(p.x.abs() < 1e-15 && p.y.abs() < 1e-15 && (p.z - 1.0).abs() < 1e-15);
        let r = dir(90.0, 0.0).to_unit_vector();
        assert!((r.y - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unit_vector_round_trip() {
        let d = dir(37.5, -12.25);
        let back = ViewingDirection::from_vector(d.to_unit_vector());
        assert!((back.yaw() - 37.5).abs() < 1e-9);
        assert!((back.pitch() + 12.25).abs() < 1e-9);
    }

    #[test]
    fn offsets_travel_the_requested_distance() {
        for (y, p) in [(0.0, 0.0), (120.0, 45.0), (-60.0, -89.0), (10.0, 90.0)] {
            for bearing in [0.0, 45.0, 200.0] {
                let from = dir(y, p);
                let to = offset_direction(from, bearing, 60.0);
                assert!((great_circle_distance(from, to) - 60.0).abs() < 1e-9);
            }
        }
        let east = offset_direction(dir(0.0, 0.0), 90.0, 10.0);
        assert!((east.yaw() - 10.0).abs() < 1e-9 && east.pitch().abs() < 1e-9);
    }

    #[test]
    fn looking_at_maps_forward_to_center() {
        for (y, p) in [(0.0, 0.0), (90.0, 0.0), (-45.0, 30.0), (170.0, -80.0), (0.0, 90.0)] {
            let c = dir(y, p);
            let got = Rotation::looking_at(c).apply(Vec3::new(1.0, 0.0, 0.0));
            assert!(angle_between(got, c.to_unit_vector()) < 1e-9);
        }
    }

    #[test]
    fn frame_must_be_two_to_one() {
        let err = EquirectFrame::new(0, Image::new(10, 10, 1)).unwrap_err();
        assert!(matches!(err, GeometryError::MalformedFrame(_)));
        let mut img = Image::new(8, 4, 1);
        img.data.pop();
        assert!(EquirectFrame::new(0, img).is_err());
    }

    #[test]
    fn invalid_fov() {
        let f = EquirectFrame::new(0, Image::new(8, 4, 1)).unwrap();
        for fov in [0.0, 180.0, -5.0, f64::NAN] {
            assert!(extract_viewport(&f, dir(0.0, 0.0), fov, 4, 4).is_err());
        }
    }

    #[test]
    fn zero_face_size_rejected() {
        let f = EquirectFrame::new(0, Image::new(8, 4, 1)).unwrap();
        assert!(equirect_to_cubemap(&f, 0).is_err());
    }
}
