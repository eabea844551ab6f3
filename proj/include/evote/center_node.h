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

// Stand-alone collection center process speaking the protocol described in
// center_client.h. The share log lives at <data_dir>/center.log.

#ifndef EVOTE_CENTER_NODE_H_
#define EVOTE_CENTER_NODE_H_

#include <filesystem>
#include <memory>
#include <mutex>
#include <string>

#include "evote/center_client.h"

namespace httplib {
class Server;
}

namespace evote {

class CenterNode {
 public:
  explicit CenterNode(std::filesystem::path data_dir);
  ~CenterNode();

  // Blocks until Stop(). Returns false if the address cannot be bound.
  bool Listen(const std::string& host, int port);
  // Binds without serving; port 0 picks a free port. Returns the bound port
  // or -1. Serve with ListenAfterBind().
  int Bind(const std::string& host, int port);
  bool ListenAfterBind();
  void Stop();

 private:
  void InstallRoutes();

  std::filesystem::path data_dir_;
  std::mutex mu_;
  std::unique_ptr<CollectionCenter> center_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace evote

#endif  // EVOTE_CENTER_NODE_H_
