//! Core value types and validation shared by every other module.
//!
//! Units are fixed SI throughout: metres, °C, W·m⁻¹·°C⁻¹ for conductivity,
//! W·m⁻²·°C⁻¹ for convection, W·m⁻² for heat flux. No unit conversion is
//! performed anywhere in the crate.

use thiserror::Error;

/// A violated invariant, reported for the first offending field in the
/// fixed order: length, convection coefficient, interface, temperatures,
/// conductivities.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("length must be positive, got {value} m")]
    NonPositiveLength { value: f64 },
    #[error("convection coefficient must be positive, got {value} W·m⁻²·°C⁻¹")]
    NonPositiveConvection { value: f64 },
    #[error("interface not strictly interior: l = {interface} m must satisfy 0 < l < {length} m")]
    InterfaceNotInterior { interface: f64, length: f64 },
    #[error(
        "source must exceed ambient: F = {source_temp} °C is not above Ta = {ambient_temp} °C"
    )]
    SourceNotAboveAmbient { source_temp: f64, ambient_temp: f64 },
    #[error("material name must be non-empty")]
    EmptyName,
    #[error("material symbol must be non-empty")]
    EmptySymbol,
    #[error("thermal conductivity must be positive, got {value} W·m⁻¹·°C⁻¹ for '{symbol}'")]
    NonPositiveConductivity { symbol: String, value: f64 },
    #[error(
        "materials must have distinct conductivities for inversion, both are {kappa} W·m⁻¹·°C⁻¹"
    )]
    EqualConductivities { kappa: f64 },
    #[error("measured flux must be positive, got {value} W·m⁻²")]
    NonPositiveFlux { value: f64 },
    #[error("noise level must be non-negative, got {value} W·m⁻²")]
    NegativeNoise { value: f64 },
}

/// A named substance with a thermal conductivity κ (W·m⁻¹·°C⁻¹).
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    name: String,
    symbol: String,
    kappa: f64,
}

impl Material {
    /// Builds a material, rejecting empty names and non-positive κ.
    pub fn new(
        name: impl Into<String>,
        symbol: impl Into<String>,
        kappa: f64,
    ) -> Result<Self, ValidationError> {
        let name = name.into();
        let symbol = symbol.into();
        if name.is_empty() {
            return Err(ValidationError::EmptyName);
        }
        if symbol.is_empty() {
            return Err(ValidationError::EmptySymbol);
        }
        if !kappa.is_finite() || kappa <= 0.0 {
            return Err(ValidationError::NonPositiveConductivity {
                symbol,
                value: kappa,
            });
        }
        Ok(Self {
            name,
            symbol,
            kappa,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    /// Thermal conductivity, W·m⁻¹·°C⁻¹.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

/// A fully specified forward-problem instance: an insulated bar of length
/// `L` with material A on `[0, l]` and material B on `[l, L]`, a constant
/// temperature source `F` at the left end and convective dissipation into
/// ambient `Ta` at the right end.
///
/// Construction validates every invariant; a value of this type is always
/// a well-posed problem. Equal conductivities are legal here (the forward
/// problem degenerates gracefully to a homogeneous bar).
#[derive(Debug, Clone, PartialEq)]
pub struct BarSetup {
    length: f64,
    interface: f64,
    source_temp: f64,
    ambient_temp: f64,
    convection_coeff: f64,
    material_a: Material,
    material_b: Material,
}

impl BarSetup {
    pub fn new(
        length: f64,
        interface: f64,
        source_temp: f64,
        ambient_temp: f64,
        convection_coeff: f64,
        material_a: Material,
        material_b: Material,
    ) -> Result<Self, ValidationError> {
        check_geometry(length, convection_coeff)?;
        if !interface.is_finite() || interface <= 0.0 || interface >= length {
            return Err(ValidationError::InterfaceNotInterior { interface, length });
        }
        if !source_temp.is_finite() || !ambient_temp.is_finite() || source_temp <= ambient_temp {
            return Err(ValidationError::SourceNotAboveAmbient {
                source_temp,
                ambient_temp,
            });
        }
        Ok(Self {
            length,
            interface,
            source_temp,
            ambient_temp,
            convection_coeff,
            material_a,
            material_b,
        })
    }

    /// Bar length L, m.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Contact point l, m, strictly inside (0, L).
    pub fn interface(&self) -> f64 {
        self.interface
    }

    /// Source temperature F, °C.
    pub fn source_temp(&self) -> f64 {
        self.source_temp
    }

    /// Ambient temperature Ta, °C.
    pub fn ambient_temp(&self) -> f64 {
        self.ambient_temp
    }

    /// Convection coefficient h, W·m⁻²·°C⁻¹.
    pub fn convection_coeff(&self) -> f64 {
        self.convection_coeff
    }

    pub fn material_a(&self) -> &Material {
        &self.material_a
    }

    pub fn material_b(&self) -> &Material {
        &self.material_b
    }

    /// κ_A, conductivity of the left segment.
    pub fn kappa_a(&self) -> f64 {
        self.material_a.kappa
    }

    /// κ_B, conductivity of the right segment.
    pub fn kappa_b(&self) -> f64 {
        self.material_b.kappa
    }

    /// Drops the interface position, producing the data available to the
    /// inverse problem. Fails when the conductivities are equal, since the
    /// inversion is singular in that case.
    pub fn without_interface(&self) -> Result<InverseSetup, ValidationError> {
        InverseSetup::new(
            self.length,
            self.source_temp,
            self.ambient_temp,
            self.convection_coeff,
            self.material_a.clone(),
            self.material_b.clone(),
        )
    }
}

/// Everything known about the bar except the contact point: the instance
/// data of the inverse problem.
///
/// Distinct conductivities are required — the inversion divides by
/// κ_B − κ_A. Equality is tested exactly; near-equal conductivities are
/// accepted and simply produce large error bounds downstream.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseSetup {
    length: f64,
    source_temp: f64,
    ambient_temp: f64,
    convection_coeff: f64,
    material_a: Material,
    material_b: Material,
}

impl InverseSetup {
    pub fn new(
        length: f64,
        source_temp: f64,
        ambient_temp: f64,
        convection_coeff: f64,
        material_a: Material,
        material_b: Material,
    ) -> Result<Self, ValidationError> {
        check_geometry(length, convection_coeff)?;
        if !source_temp.is_finite() || !ambient_temp.is_finite() || source_temp <= ambient_temp {
            return Err(ValidationError::SourceNotAboveAmbient {
                source_temp,
                ambient_temp,
            });
        }
        if material_a.kappa == material_b.kappa {
            return Err(ValidationError::EqualConductivities {
                kappa: material_a.kappa,
            });
        }
        Ok(Self {
            length,
            source_temp,
            ambient_temp,
            convection_coeff,
            material_a,
            material_b,
        })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn source_temp(&self) -> f64 {
        self.source_temp
    }

    pub fn ambient_temp(&self) -> f64 {
        self.ambient_temp
    }

    pub fn convection_coeff(&self) -> f64 {
        self.convection_coeff
    }

    pub fn material_a(&self) -> &Material {
        &self.material_a
    }

    pub fn material_b(&self) -> &Material {
        &self.material_b
    }

    pub fn kappa_a(&self) -> f64 {
        self.material_a.kappa
    }

    pub fn kappa_b(&self) -> f64 {
        self.material_b.kappa
    }

    /// Pins the interface at `l`, recovering a forward-problem instance.
    pub fn with_interface(&self, interface: f64) -> Result<BarSetup, ValidationError> {
        BarSetup::new(
            self.length,
            interface,
            self.source_temp,
            self.ambient_temp,
            self.convection_coeff,
            self.material_a.clone(),
            self.material_b.clone(),
        )
    }
}

/// A noisy boundary-flux reading: the measured value q̂ and the
/// instrument-specified noise level ε bounding |q − q̂|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxMeasurement {
    q_hat: f64,
    epsilon: f64,
}

impl FluxMeasurement {
    pub fn new(q_hat: f64, epsilon: f64) -> Result<Self, ValidationError> {
        if !q_hat.is_finite() || q_hat <= 0.0 {
            return Err(ValidationError::NonPositiveFlux { value: q_hat });
        }
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(ValidationError::NegativeNoise { value: epsilon });
        }
        Ok(Self { q_hat, epsilon })
    }

    /// Measured flux q̂, W·m⁻².
    pub fn q_hat(&self) -> f64 {
        self.q_hat
    }

    /// Noise level ε, W·m⁻².
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

fn check_geometry(length: f64, convection_coeff: f64) -> Result<(), ValidationError> {
    if !length.is_finite() || length <= 0.0 {
        return Err(ValidationError::NonPositiveLength { value: length });
    }
    if !convection_coeff.is_finite() || convection_coeff <= 0.0 {
        return Err(ValidationError::NonPositiveConvection {
            value: convection_coeff,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe() -> Material {
        Material::new("Iron", "Fe", 73.0).unwrap()
    }

    fn cu() -> Material {
        Material::new("Copper", "Cu", 386.0).unwrap()
    }

    #[test]
    fn accepts_the_reference_instance() {
        let setup = BarSetup::new(10.0, 4.0, 100.0, 25.0, 10.0, fe(), cu()).unwrap();
        assert_eq!(setup.length(), 10.0);
        assert_eq!(setup.interface(), 4.0);
        assert_eq!(setup.kappa_a(), 73.0);
        assert_eq!(setup.kappa_b(), 386.0);
    }

    #[test]
    fn rejects_interface_on_boundary() {
        let err = BarSetup::new(10.0, 0.0, 100.0, 25.0, 10.0, fe(), cu()).unwrap_err();
        assert!(matches!(err, ValidationError::InterfaceNotInterior { .. }));
        assert!(err.to_string().contains("interface not strictly interior"));

        let err = BarSetup::new(10.0, 10.0, 100.0, 25.0, 10.0, fe(), cu()).unwrap_err();
        assert!(matches!(err, ValidationError::InterfaceNotInterior { .. }));
    }

    #[test]
    fn rejects_source_equal_to_ambient() {
        let err = BarSetup::new(10.0, 4.0, 25.0, 25.0, 10.0, fe(), cu()).unwrap_err();
        assert!(matches!(err, ValidationError::SourceNotAboveAmbient { .. }));
        assert!(err.to_string().contains("source must exceed ambient"));
    }

    #[test]
    fn negative_temperatures_are_fine_when_ordered() {
        assert!(BarSetup::new(10.0, 4.0, -5.0, -40.0, 10.0, fe(), cu()).is_ok());
    }

    #[test]
    fn reports_first_violation_in_field_order() {
        // Both L and h invalid: L is reported first.
        let err = BarSetup::new(-1.0, 4.0, 25.0, 25.0, -3.0, fe(), cu()).unwrap_err();
        assert!(matches!(err, ValidationError::NonPositiveLength { .. }));
        // h before l.
        let err = BarSetup::new(10.0, -4.0, 25.0, 25.0, -3.0, fe(), cu()).unwrap_err();
        assert!(matches!(err, ValidationError::NonPositiveConvection { .. }));
        // l before temperatures.
        let err = BarSetup::new(10.0, -4.0, 25.0, 25.0, 10.0, fe(), cu()).unwrap_err();
        assert!(matches!(err, ValidationError::InterfaceNotInterior { .. }));
    }

    #[test]
    fn nan_inputs_are_rejected_not_propagated() {
        assert!(BarSetup::new(f64::NAN, 4.0, 100.0, 25.0, 10.0, fe(), cu()).is_err());
        assert!(BarSetup::new(10.0, f64::NAN, 100.0, 25.0, 10.0, fe(), cu()).is_err());
        assert!(BarSetup::new(10.0, 4.0, f64::NAN, 25.0, 10.0, fe(), cu()).is_err());
        assert!(FluxMeasurement::new(f64::NAN, 0.0).is_err());
        assert!(FluxMeasurement::new(440.0, f64::NAN).is_err());
    }

    #[test]
    fn equal_conductivities_legal_forward_illegal_inverse() {
        let m = Material::new("Iron", "Fe", 73.0).unwrap();
        let setup = BarSetup::new(10.0, 4.0, 100.0, 25.0, 10.0, m.clone(), m.clone()).unwrap();
        let err = setup.without_interface().unwrap_err();
        assert_eq!(err, ValidationError::EqualConductivities { kappa: 73.0 });
        // Near-equal is accepted exactly as distinct.
        let m2 = Material::new("Iron-ish", "Fe2", 73.0 + 1e-12).unwrap();
        assert!(InverseSetup::new(10.0, 100.0, 25.0, 10.0, m, m2).is_ok());
    }

    #[test]
    fn material_invariants() {
        assert!(matches!(
            Material::new("", "Fe", 73.0),
            Err(ValidationError::EmptyName)
        ));
        assert!(matches!(
            Material::new("Iron", "", 73.0),
            Err(ValidationError::EmptySymbol)
        ));
        assert!(matches!(
            Material::new("Iron", "Fe", 0.0),
            Err(ValidationError::NonPositiveConductivity { .. })
        ));
        assert!(matches!(
            Material::new("Iron", "Fe", -7.0),
            Err(ValidationError::NonPositiveConductivity { .. })
        ));
    }

    #[test]
    fn measurement_invariants() {
        assert!(FluxMeasurement::new(440.0, 0.0).is_ok());
        assert!(matches!(
            FluxMeasurement::new(0.0, 1.0),
            Err(ValidationError::NonPositiveFlux { .. })
        ));
        assert!(matches!(
            FluxMeasurement::new(440.0, -1.0),
            Err(ValidationError::NegativeNoise { .. })
        ));
    }

    #[test]
    fn interface_round_trip_between_setup_kinds() {
        let setup = BarSetup::new(10.0, 4.0, 100.0, 25.0, 10.0, fe(), cu()).unwrap();
        let inv = setup.without_interface().unwrap();
        let back = inv.with_interface(4.0).unwrap();
        assert_eq!(setup, back);
        assert!(inv.with_interface(10.0).is_err());
    }
}
