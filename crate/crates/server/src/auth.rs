use axum::extract::FromRequestParts;
use axum::http::header::AUTHORIZATION;
use axum::http::request::Parts;
use fakeyou_core::{GameError, PlayerId};

use crate::error::ApiError;
use crate::AppState;

/// The player behind the bearer token.
#[derive(Debug, Clone, Copy)]
pub struct Caller(pub PlayerId);

impl FromRequestParts<AppState> for Caller {
    type Rejection = ApiError;

    async fn from_request_parts(parts: &mut Parts, state: &AppState) -> Result<Self, Self::Rejection> {
        let token = parts
            .headers
            .get(AUTHORIZATION)
            .and_then(|v| v.to_str().ok())
            .and_then(|v| v.strip_prefix("Bearer "))
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .ok_or(GameError::Unauthorized)?;
        Ok(Caller(state.engine.resolve_token(token)?))
    }
}
