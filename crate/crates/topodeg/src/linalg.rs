//! Small fixed-size vector and determinant helpers.
//!
//! Everything here works on plain `[f64; N]` arrays. Determinants take the
//! matrix as an array of *columns*, which is the layout the solid-angle
//! density wants: first column the field value, remaining columns its
//! directional derivatives.

pub fn dot2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn dot4(a: [f64; 4], b: [f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

pub fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm2(a: [f64; 2]) -> f64 {
    dot2(a, a).sqrt()
}

pub fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

pub fn norm4(a: [f64; 4]) -> f64 {
    dot4(a, a).sqrt()
}

pub fn det2(c0: [f64; 2], c1: [f64; 2]) -> f64 {
    c0[0] * c1[1] - c0[1] * c1[0]
}

pub fn det3(c0: [f64; 3], c1: [f64; 3], c2: [f64; 3]) -> f64 {
    dot3(c0, cross3(c1, c2))
}

/// Cofactor expansion along the first column.
pub fn det4(c0: [f64; 4], c1: [f64; 4], c2: [f64; 4], c3: [f64; 4]) -> f64 {
    let minor = |skip: usize| -> f64 {
        let pick = |c: [f64; 4]| -> [f64; 3] {
            let mut out = [0.0; 3];
            let mut k = 0;
            for (i, v) in c.iter().enumerate() {
                if i != skip {
                    out[k] = *v;
                    k += 1;
                }
            }
            out
        };
        det3(pick(c1), pick(c2), pick(c3))
    };
    c0[0] * minor(0) - c0[1] * minor(1) + c0[2] * minor(2) - c0[3] * minor(3)
}

/// Rodrigues rotation of `v` about the unit axis by `angle`.
pub fn rotate3(axis: [f64; 3], angle: f64, v: [f64; 3]) -> [f64; 3] {
    let n = norm3(axis);
    assert!(n > 1e-12, "rotation axis must be nonzero");
    let k = [axis[0] / n, axis[1] / n, axis[2] / n];
    let c = angle.cos();
    let s = angle.sin();
    let kxv = cross3(k, v);
    let kdv = dot3(k, v);
    [
        v[0] * c + kxv[0] * s + k[0] * kdv * (1.0 - c),
        v[1] * c + kxv[1] * s + k[1] * kdv * (1.0 - c),
        v[2] * c + kxv[2] * s + k[2] * kdv * (1.0 - c),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det3_of_identity_columns() {
        assert_eq!(det3([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]), 1.0);
    }

    #[test]
    fn det4_column_swap_flips_sign() {
        let c = [
            [1.0, 2.0, 0.5, -1.0],
            [0.0, 1.0, 3.0, 2.0],
            [4.0, -2.0, 1.0, 0.0],
            [1.0, 1.0, 1.0, 1.0],
        ];
        let d = det4(c[0], c[1], c[2], c[3]);
        let swapped = det4(c[1], c[0], c[2], c[3]);
        assert!((d + swapped).abs() < 1e-12 * d.abs().max(1.0));
    }

    #[test]
    fn det4_against_laplace_by_hand() {
        // block-diagonal [[2,1],[1,1]] x [[3,0],[4,5]] has det 1 * 15
        let d = det4(
            [2.0, 1.0, 0.0, 0.0],
            [1.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 3.0, 4.0],
            [0.0, 0.0, 0.0, 5.0],
        );
        assert!((d - 15.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_preserves_norm_and_axis() {
        let axis = [1.0, 2.0, 3.0];
        let v = [0.3, -0.7, 0.2];
        let w = rotate3(axis, 0.9, v);
        assert!((norm3(w) - norm3(v)).abs() < 1e-14);
        let a = rotate3(axis, 1.3, axis);
        assert!((a[0] - axis[0]).abs() < 1e-14);
        assert!((a[1] - axis[1]).abs() < 1e-14);
        assert!((a[2] - axis[2]).abs() < 1e-14);
    }
}
