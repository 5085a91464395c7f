use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

/// A coordinate vector in the ambient space of a cone.
///
/// Symmetric matrices are stored as full `k x k` arrays in row-major order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point { coords }
    }

    pub fn zeros(len: usize) -> Self {
        Point {
            coords: vec![0.0; len],
        }
    }

    /// Builds a `k x k` matrix point from its diagonal.
    pub fn diag(entries: &[f64]) -> Self {
        let k = entries.len();
        let mut coords = vec![0.0; k * k];
        for (i, &d) in entries.iter().enumerate() {
            coords[i * k + i] = d;
        }
        Point { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.coords.iter()
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, factor: f64) -> Point {
        Point::new(self.coords.iter().map(|v| v * factor).collect())
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &Point, b: f64) -> Point {
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        )
    }

    pub fn sup_distance(&self, other: &Point) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Rescales to unit sup norm. The zero vector is returned unchanged.
    pub fn normalized_sup(&self) -> Point {
        let n = self.sup_norm();
        if n == 0.0 {
            self.clone()
        } else {
            self.scale(1.0 / n)
        }
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point::new(coords)
    }
}

impl From<&[f64]> for Point {
    fn from(coords: &[f64]) -> Self {
        Point::new(coords.to_vec())
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(coords: [f64; N]) -> Self {
        Point::new(coords.to_vec())
    }
}

impl Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        self.combine(1.0, rhs, 1.0)
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        self.combine(1.0, rhs, -1.0)
    }
}

impl Mul<&Point> for f64 {
    type Output = Point;
    fn mul(self, rhs: &Point) -> Point {
        rhs.scale(self)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Point::from([1.0, -2.0]);
        let b = Point::from([3.0, 4.0]);
        assert_eq!((&a + &b).coords(), &[4.0, 2.0]);
        assert_eq!((&b - &a).coords(), &[2.0, 6.0]);
        assert_eq!((2.0 * &a).coords(), &[2.0, -4.0]);
        assert_eq!(a.dot(&b), -5.0);
        assert_eq!(a.sup_norm(), 2.0);
        assert_eq!(a.normalized_sup().coords(), &[0.5, -1.0]);
    }

    #[test]
    fn diag_layout() {
        let d = Point::diag(&[2.0, 3.0]);
        assert_eq!(d.coords(), &[2.0, 0.0, 0.0, 3.0]);
    }
}
