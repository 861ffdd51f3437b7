import type {
  AnswerResponse,
  ApiErrorBody,
  QuestionListPayload,
  QuestionPayload,
  ResultsPayload,
  SessionInfo,
  WhatIfRequest,
  WhatIfResponse,
} from "./types";

/** Error raised for any non-2xx response; carries the service's error body. */
export class ApiRequestError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public details: Record<string, unknown> = {},
  ) {
    super(message);
    this.name = "ApiRequestError";
  }
}

export class ApiClient {
  constructor(private base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const error = (body ?? {
        code: "unknown_error",
        message: `HTTP ${response.status}`,
        details: {},
      }) as ApiErrorBody;
      throw new ApiRequestError(response.status, error.code, error.message, error.details);
    }
    return body as T;
  }

  openSession(decisionMakerId: string, reopen = false): Promise<SessionInfo> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify({ decisionMakerId, reopen }),
    });
  }

  currentQuestion(sessionId: string): Promise<QuestionPayload> {
    return this.request(`/sessions/${sessionId}/question`);
  }

  submitAnswer(
    sessionId: string,
    question: QuestionPayload,
    favored: "first" | "second",
    term: string,
  ): Promise<AnswerResponse> {
    return this.request(`/sessions/${sessionId}/answer`, {
      method: "POST",
      body: JSON.stringify({
        questionIndex: question.questionIndex,
        first: question.firstNode,
        second: question.secondNode,
        favored,
        term,
      }),
    });
  }

  results(): Promise<ResultsPayload> {
    return this.request("/panel/results");
  }

  questionList(): Promise<QuestionListPayload> {
    return this.request("/questions");
  }

  whatIf(body: WhatIfRequest): Promise<WhatIfResponse> {
    return this.request("/panel/whatif", {
      method: "POST",
      body: JSON.stringify(body),
    });
  }
}
