import {area} from "./area.js";
var describe = function (r) {
  return "circle of radius " + r + " has area " + area(r).toFixed(2);
};
export {describe};
