use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use docket_core::case::CaseError;
use docket_core::crypto::CryptoError;
use docket_core::report::ReportError;
use docket_core::store::StoreError;
use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum ApiError {
    #[error("authentication required")]
    Unauthenticated,
    #[error("session expired")]
    ExpiredToken,
    /// Same message whether the user is unknown or the password is wrong.
    #[error("invalid username or password")]
    BadCredentials,
    #[error("account disabled")]
    AccountDisabled,
    #[error("not permitted")]
    Forbidden,
    #[error("case not found")]
    CaseNotFound,
    #[error("{0} not found")]
    NotFound(String),
    #[error("{0}")]
    BadRequest(String),
    #[error("{0}")]
    Conflict(String),
    #[error(transparent)]
    Case(#[from] CaseError),
    #[error(transparent)]
    Crypto(#[from] CryptoError),
    #[error(transparent)]
    Store(StoreError),
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::VersionConflict { .. } => ApiError::Conflict(e.to_string()),
            StoreError::NotFound { kind, id } => ApiError::NotFound(format!("{kind:?} {id}")),
            other => ApiError::Store(other),
        }
    }
}

impl From<ReportError> for ApiError {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Unauthorized => ApiError::Forbidden,
            ReportError::InvalidPeriod { .. } => ApiError::BadRequest(e.to_string()),
        }
    }
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match self {
            ApiError::Unauthenticated | ApiError::ExpiredToken | ApiError::BadCredentials => {
                StatusCode::UNAUTHORIZED
            }
            ApiError::AccountDisabled | ApiError::Forbidden => StatusCode::FORBIDDEN,
            ApiError::CaseNotFound | ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::BadRequest(_) | ApiError::Crypto(_) => StatusCode::BAD_REQUEST,
            ApiError::Conflict(_) => StatusCode::CONFLICT,
            ApiError::Case(e) => match e {
                CaseError::EmptyName
                | CaseError::UnknownNature(_)
                | CaseError::UnknownCaseType(_)
                | CaseError::EmptyMinute
                | CaseError::UnknownOffice(_)
                | CaseError::WrongRole { .. } => StatusCode::UNPROCESSABLE_ENTITY,
                _ => StatusCode::CONFLICT,
            },
            ApiError::Store(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = self.status();
        let message = match &self {
            // internal detail stays in the log
            ApiError::Store(e) => {
                tracing::error!(error = %e, "store failure");
                "internal error".to_owned()
            }
            other => other.to_string(),
        };
        (status, Json(json!({ "error": message }))).into_response()
    }
}
