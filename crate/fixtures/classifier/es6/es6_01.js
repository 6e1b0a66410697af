import {join} from "path";
export function where(p) {
  return join('/', p);
}
