//! Two circles tangent at the origin `O`: the small one of radius 1 centred at
//! `C = (0, 1)`, the large one of radius 2 centred at `P = (0, 2)`, which is
//! also the point of the small circle opposite `O`. A ray from `P` at angle
//! `φ` to the downward vertical meets the plane `z = 0` at `Q`; joining `Q`
//! back to `P` cuts the small circle at `M`, and `θ` is the angle `OCM`.

use serde::Serialize;

use super::SpinorError;

const P: [f64; 2] = [0.0, 2.0];
const C: [f64; 2] = [0.0, 1.0];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StereoRow {
    pub phi: f64,
    pub theta: f64,
    pub residual: f64,
}

/// Returns `θ` in degrees and `|θ − 2φ|`.
pub fn stereographic_double_angle(phi_deg: f64) -> Result<(f64, f64), SpinorError> {
    if !(phi_deg > 0.0 && phi_deg < 180.0) {
        return Err(SpinorError::DomainError(phi_deg));
    }
    let phi = phi_deg.to_radians();
    let (s, c) = phi.sin_cos();
    // Direction of the line PQ; at φ = 90° the planar point is at infinity
    // and the line is horizontal.
    let u = if c.abs() < 1e-15 {
        [1.0, 0.0]
    } else {
        let t = 2.0 / c;
        let q = [P[0] + t * s, P[1] - t * c];
        let d = [q[0] - P[0], q[1] - P[1]];
        let len = d[0].hypot(d[1]);
        [d[0] / len, d[1] / len]
    };
    // |P + t·u − C| = 1 with P − C = (0, 1) gives t = −2u_z.
    let t = -2.0 * u[1];
    let m = [P[0] + t * u[0], P[1] + t * u[1]];
    let mut theta = (m[0] - C[0]).atan2(-(m[1] - C[1])).to_degrees();
    if theta < 0.0 {
        theta += 360.0;
    }
    Ok((theta, (theta - 2.0 * phi_deg).abs()))
}

/// Integer-degree sweep over `1..=179`.
pub fn stereographic_sweep() -> Vec<StereoRow> {
    (1..180)
        .map(|d| {
            let phi = d as f64;
            let (theta, residual) = stereographic_double_angle(phi).expect("inside the open interval");
            StereoRow { phi, theta, residual }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_angles() {
        for (phi, theta) in [(45.0, 90.0), (30.0, 60.0), (90.0, 180.0), (120.0, 240.0)] {
            let (t, r) = stereographic_double_angle(phi).unwrap();
            assert!((t - theta).abs() < 1e-12, "{phi}: {t}");
            assert!(r < 1e-12);
        }
    }

    #[test]
    fn endpoints_rejected() {
        for phi in [0.0, 180.0, -5.0, f64::NAN] {
            assert!(matches!(stereographic_double_angle(phi), Err(SpinorError::DomainError(_))));
        }
    }

    #[test]
    fn sweep_has_179_rows() {
        let rows = stereographic_sweep();
        assert_eq!(rows.len(), 179);
        assert!(rows.iter().all(|r| r.residual < 1e-9));
    }
}
