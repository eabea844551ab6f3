// Copyright 2026 The evote Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EVOTE_SRC_HTTP_UTIL_H_
#define EVOTE_SRC_HTTP_UTIL_H_

#include <string>

#include "httplib.h"

#include "evote/error.h"
#include "evote/json_codec.h"

namespace evote::internal {

int HttpStatusFor(ErrorCode code);

inline void SendJson(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

inline void SendError(httplib::Response& res, const Error& e) {
  SendJson(res, HttpStatusFor(e.code()),
           {{"error", std::string(ErrorCodeName(e.code()))},
            {"message", e.what()}});
}

// Runs `fn`, mapping library errors and malformed JSON to error responses.
template <typename Fn>
void Guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    SendError(res, e);
  } catch (const Json::exception& e) {
    SendJson(res, 400, {{"error", "BadRequest"}, {"message", e.what()}});
  }
}

inline Json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  return Json::parse(req.body);
}

}  // namespace evote::internal

#endif  // EVOTE_SRC_HTTP_UTIL_H_
