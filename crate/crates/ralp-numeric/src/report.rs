//! Per-property report rows.

use ralp_core::Scalar;

use crate::metrics::{interval_metrics, mean_absolute_error, mean_squared_error};
use crate::predict::IntervalPrediction;
use crate::NumericError;

/// One report row: true mean and spread, predicted mean, calibration
/// (ICR), sharpness (IW), plus MSE/MAE and the sample count.
#[derive(Clone, Debug, PartialEq)]
pub struct PropertyRow {
    pub property: String,
    pub y_avg: f64,
    pub sigma: f64,
    pub y_hat_avg: f64,
    pub icr: f64,
    pub iw: f64,
    pub mse: f64,
    pub mae: f64,
    pub n: usize,
}

pub fn property_row<F: Scalar>(
    property: impl Into<String>,
    preds: &[IntervalPrediction<F>],
    truths: &[F],
) -> Result<PropertyRow, NumericError> {
    let estimates: Vec<F> = preds.iter().map(|p| p.y_hat).collect();
    let (icr, iw) = interval_metrics(preds, truths)?;
    let mse = mean_squared_error(&estimates, truths)?;
    let mae = mean_absolute_error(&estimates, truths)?;
    let (y_avg, sigma) =
        ralp_core::math::mean_std(truths).ok_or(NumericError::EmptyInput)?;
    let (y_hat_avg, _) =
        ralp_core::math::mean_std(&estimates).ok_or(NumericError::EmptyInput)?;
    Ok(PropertyRow {
        property: property.into(),
        y_avg: y_avg.widen(),
        sigma: sigma.widen(),
        y_hat_avg: y_hat_avg.widen(),
        icr: icr.widen(),
        iw: iw.widen(),
        mse: mse.widen(),
        mae: mae.widen(),
        n: truths.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_aggregates_all_statistics() {
        let preds = [
            IntervalPrediction {
                y_hat: 2.0_f64,
                y_min: 1.0,
                y_max: 3.0,
            },
            IntervalPrediction {
                y_hat: 4.0,
                y_min: 2.0,
                y_max: 6.0,
            },
        ];
        let truths = [2.0, 6.0];
        let row = property_row("population", &preds, &truths).unwrap();
        assert_eq!(row.n, 2);
        assert_eq!(row.y_avg, 4.0);
        assert_eq!(row.sigma, 2.0);
        assert_eq!(row.y_hat_avg, 3.0);
        assert_eq!(row.icr, 1.0);
        assert_eq!(row.iw, 3.0);
        assert_eq!(row.mse, 2.0);
        assert_eq!(row.mae, 1.0);
    }
}
