use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use fakeyou_core::GameError;
use serde::{Deserialize, Serialize};

/// Wire form of every error response.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
        }
    }

    pub fn invalid_body(message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, "InvalidBody", message)
    }

    pub fn results_withheld() -> Self {
        Self::new(
            StatusCode::FORBIDDEN,
            "ResultsWithheld",
            "place your bet in every open round first",
        )
    }

    pub fn not_found() -> Self {
        Self::new(StatusCode::NOT_FOUND, "NotFound", "no such resource")
    }

    pub fn internal() -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "Internal", "internal error")
    }
}

impl From<GameError> for ApiError {
    fn from(err: GameError) -> Self {
        use GameError::*;
        let status = match &err {
            AliasTaken | AlreadyQueued | AlreadyPlaying | WrongPhase | AlreadySubmitted
            | DuplicateFake | MatchesTruth | AlreadyBet | NotReady | AlreadyScored => {
                StatusCode::CONFLICT
            }
            EmptyAlias | EmptyText | InvalidOption => StatusCode::UNPROCESSABLE_ENTITY,
            UnknownPlayer(_) | UnknownGame(_) | UnknownRound(_) => StatusCode::NOT_FOUND,
            NotMember => StatusCode::FORBIDDEN,
            Unauthorized => StatusCode::UNAUTHORIZED,
            InsufficientArticles { .. } => StatusCode::SERVICE_UNAVAILABLE,
            Storage(e) => {
                tracing::error!(error = %e, "storage failure");
                return ApiError::internal();
            }
        };
        ApiError::new(status, err.code(), err.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorBody {
            code: self.code.to_string(),
            message: self.message,
        };
        (self.status, Json(body)).into_response()
    }
}
