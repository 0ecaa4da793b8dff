/*
 * Copyright 2026 The hdll Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


/* Compiled as C to keep the public header free of C++ constructs. */

#include "hdll/hdll.h"

int hdll_c_header_check(void);

int hdll_c_header_check(void) {
  hdll_encode_options options;
  hdll_encode_options_default(&options);
  return options.quality == 85 && options.mode == HDLL_MODE_SLRME &&
         hdll_status_string(HDLL_OK)[0] != '\0';
}
