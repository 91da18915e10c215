use num_complex::Complex;

use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorKind {
    Zero,
    Pole,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivisorEntry<T> {
    pub location: Complex<T>,
    pub multiplicity: u32,
    pub kind: DivisorKind,
}

/// Zeros and poles of a function inside `|z| ≤ disk_radius`.
///
/// The catalog is the ground truth for the counting functions `n(r, ·)` and
/// `N(r, ·)`. Entries are kept in canonical order: zeros before poles, then
/// by modulus and argument.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorCatalog<T> {
    pub disk_radius: T,
    pub entries: Vec<DivisorEntry<T>>,
    pub exact: bool,
    pub location_tolerance: T,
}

impl<T: Real> DivisorCatalog<T> {
    pub fn empty(disk_radius: T) -> Self {
        DivisorCatalog { disk_radius, entries: Vec::new(), exact: true, location_tolerance: T::zero() }
    }

    pub(crate) fn from_entries(
        disk_radius: T,
        mut entries: Vec<DivisorEntry<T>>,
        exact: bool,
        location_tolerance: T,
    ) -> Self {
        entries.retain(|e| e.location.norm() <= disk_radius);
        sort_canonical(&mut entries);
        DivisorCatalog { disk_radius, entries, exact, location_tolerance }
    }

    pub fn zeros(&self) -> impl Iterator<Item = &DivisorEntry<T>> {
        self.entries.iter().filter(|e| e.kind == DivisorKind::Zero)
    }

    pub fn poles(&self) -> impl Iterator<Item = &DivisorEntry<T>> {
        self.entries.iter().filter(|e| e.kind == DivisorKind::Pole)
    }

    /// `n(r)`: multiplicity sum of the entries of `kind` with `|location| ≤ r`.
    pub fn count(&self, kind: DivisorKind, r: T) -> u32 {
        self.entries.iter().filter(|e| e.kind == kind && e.location.norm() <= r).map(|e| e.multiplicity).sum()
    }

    /// Restriction to a smaller disk.
    pub fn restricted(&self, r: T) -> Self {
        DivisorCatalog::from_entries(r, self.entries.clone(), self.exact, self.location_tolerance)
    }

    /// Tolerance below which a location is treated as the origin.
    pub fn origin_tolerance(&self) -> T {
        self.location_tolerance.max(T::lit(1e-13) * T::one().max(self.disk_radius))
    }
}

/// Sort key on a `1e-9` lattice so that numerically equal locations order the
/// same way; the angle is taken in `[0, 2π)` with near-`2π` folded to `0`.
fn canonical_key<T: Real>(z: Complex<T>) -> (i64, i64) {
    let two_pi = T::PI() + T::PI();
    let mut a = z.arg();
    if a < T::zero() {
        a = a + two_pi;
    }
    let scale = T::lit(1e9);
    let mut ka = (a * scale).round().to_i64().unwrap_or(0);
    if ka >= (two_pi * scale).round().to_i64().unwrap_or(i64::MAX) {
        ka = 0;
    }
    ((z.norm() * scale).round().to_i64().unwrap_or(i64::MAX), ka)
}

pub(crate) fn sort_canonical<T: Real>(entries: &mut [DivisorEntry<T>]) {
    entries.sort_by_key(|e| (e.kind, canonical_key(e.location)));
}

/// Merges signed point masses (positive = zero order, negative = pole order)
/// whose locations agree within `tol·(1 + |z|)`; cancelled points disappear.
pub(crate) fn merge_signed<T: Real>(points: Vec<(Complex<T>, i64)>, tol: T) -> Vec<(Complex<T>, i64)> {
    let mut merged: Vec<(Complex<T>, i64)> = Vec::new();
    for (z, m) in points {
        match merged.iter_mut().find(|(w, _)| (*w - z).norm() <= tol * (T::one() + z.norm().max(w.norm()))) {
            Some(slot) => slot.1 += m,
            None => merged.push((z, m)),
        }
    }
    merged.retain(|(_, m)| *m != 0);
    merged
}

pub(crate) fn signed_to_entries<T: Real>(points: Vec<(Complex<T>, i64)>) -> Vec<DivisorEntry<T>> {
    points
        .into_iter()
        .map(|(location, m)| DivisorEntry {
            location,
            multiplicity: m.unsigned_abs() as u32,
            kind: if m > 0 { DivisorKind::Zero } else { DivisorKind::Pole },
        })
        .collect()
}
