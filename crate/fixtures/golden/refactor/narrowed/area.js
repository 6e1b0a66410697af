import {PI, square} from "./shapes.js";
function area(r) {
  return PI * square(r);
}
export {area};
